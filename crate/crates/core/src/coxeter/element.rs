use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

/// A signed positive-root index packed as `index << 1 | negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot(u32);

impl SignedRoot {
    pub fn new(index: usize, negative: bool) -> Self {
        SignedRoot(((index as u32) << 1) | negative as u32)
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Self {
        SignedRoot(self.0 ^ 1)
    }

    fn flip_if(self, negative: bool) -> Self {
        SignedRoot(self.0 ^ negative as u32)
    }
}

impl serde::Serialize for SignedRoot {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SignedRoot", 2)?;
        st.serialize_field("index", &self.index())?;
        st.serialize_field("negative", &self.is_negative())?;
        st.end()
    }
}

impl fmt::Display for SignedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_negative() { "-" } else { "" };
        write!(f, "{sign}b{}", self.index())
    }
}

/// Group element stored as its action on positive roots.
///
/// `image[p]` is the signed root `w(b_p)` and `preimage[q]` is `w^-1(b_q)`.
/// Two elements are equal exactly when their image tables agree.
#[derive(Clone)]
pub struct GroupElement {
    pub(crate) system: u64,
    image: Arc<[SignedRoot]>,
    preimage: Arc<[SignedRoot]>,
    length: usize,
}

impl GroupElement {
    pub(crate) fn identity(system: u64, roots: usize) -> Self {
        let table: Arc<[SignedRoot]> = (0..roots).map(|p| SignedRoot::new(p, false)).collect();
        Self {
            system,
            image: table.clone(),
            preimage: table,
            length: 0,
        }
    }

    pub(crate) fn from_image(system: u64, image: Vec<SignedRoot>) -> Self {
        let mut preimage = vec![SignedRoot::new(0, false); image.len()];
        let mut length = 0;
        for (p, &img) in image.iter().enumerate() {
            preimage[img.index()] = SignedRoot::new(p, img.is_negative());
            length += img.is_negative() as usize;
        }
        Self {
            system,
            image: image.into(),
            preimage: preimage.into(),
            length,
        }
    }

    /// Composition `self * other` (apply `other` first).
    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        let image = other
            .image
            .iter()
            .map(|&r| self.image[r.index()].flip_if(r.is_negative()))
            .collect();
        GroupElement::from_image(self.system, image)
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            system: self.system,
            image: self.preimage.clone(),
            preimage: self.image.clone(),
            length: self.length,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `w(b)` for a signed root `b`.
    pub fn act(&self, root: SignedRoot) -> SignedRoot {
        self.image[root.index()].flip_if(root.is_negative())
    }

    /// `w^-1(b)` for a signed root `b`.
    pub fn act_inverse(&self, root: SignedRoot) -> SignedRoot {
        self.preimage[root.index()].flip_if(root.is_negative())
    }

    /// `s_i` is a left descent: `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.preimage[i].is_negative()
    }

    /// `s_i` is a right descent: `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.image[i].is_negative()
    }

    /// Positive roots `b` with `w^-1(b) < 0`; encodes the right weak order by
    /// containment.
    pub fn inversion_set(&self) -> InversionSet {
        let mut bits = FixedBitSet::with_capacity(self.preimage.len());
        for (q, r) in self.preimage.iter().enumerate() {
            if r.is_negative() {
                bits.insert(q);
            }
        }
        InversionSet(bits)
    }

    pub(crate) fn key(&self) -> &[SignedRoot] {
        &self.image
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system && self.image == other.image
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.system.hash(state);
        self.image.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupElement")
            .field("length", &self.length)
            .field("image", &self.image.iter().map(ToString::to_string).collect::<Vec<_>>())
            .finish()
    }
}

/// Bitset over positive-root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionSet(pub(crate) FixedBitSet);

impl InversionSet {
    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, root: usize) -> bool {
        self.0.contains(root)
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }
}
