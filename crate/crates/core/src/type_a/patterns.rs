use std::fmt;

use super::{Bar, Barring, Permutation};

/// A pattern of length three, optionally requiring a bar on the entry that
/// plays the role of `2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pattern {
    pub shape: [usize; 3],
    pub two_bar: Option<Bar>,
}

impl Pattern {
    pub const fn plain(shape: [usize; 3]) -> Self {
        Pattern { shape, two_bar: None }
    }

    pub const P312: Pattern = Pattern::plain([3, 1, 2]);
    pub const P231: Pattern = Pattern::plain([2, 3, 1]);
    pub const P132: Pattern = Pattern::plain([1, 3, 2]);
    pub const P213: Pattern = Pattern::plain([2, 1, 3]);
    /// `312` with a lower-barred `2`.
    pub const P31_DOWN2: Pattern = Pattern {
        shape: [3, 1, 2],
        two_bar: Some(Bar::Down),
    };
    /// `231` with an upper-barred `2`.
    pub const P_UP2_31: Pattern = Pattern {
        shape: [2, 3, 1],
        two_bar: Some(Bar::Up),
    };
    /// `132` with a lower-barred `2`.
    pub const P13_DOWN2: Pattern = Pattern {
        shape: [1, 3, 2],
        two_bar: Some(Bar::Down),
    };
    /// `213` with an upper-barred `2`.
    pub const P_UP2_13: Pattern = Pattern {
        shape: [2, 1, 3],
        two_bar: Some(Bar::Up),
    };
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.shape {
            match (v, self.two_bar) {
                (2, Some(Bar::Up)) => f.write_str("^2")?,
                (2, Some(Bar::Down)) => f.write_str("_2")?,
                _ => write!(f, "{v}")?,
            }
        }
        Ok(())
    }
}

/// First occurrence of `pattern` in `x` as positions `i < j < k`.
pub fn find_pattern(x: &Permutation, pattern: Pattern, barring: &Barring) -> Option<[usize; 3]> {
    let e = x.entries();
    let m = e.len();
    let two = pattern.shape.iter().position(|&v| v == 2).unwrap();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let vals = [e[i], e[j], e[k]];
                let shape_ok =
                    (0..3).all(|a| (0..3).all(|b| (vals[a] < vals[b]) == (pattern.shape[a] < pattern.shape[b])));
                if !shape_ok {
                    continue;
                }
                if pattern.two_bar.is_none_or(|bar| barring.bar(vals[two]) == bar) {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

pub fn contains_pattern(x: &Permutation, pattern: Pattern, barring: &Barring) -> bool {
    find_pattern(x, pattern, barring).is_some()
}

/// Avoids `31_2` and `^231`.
pub fn is_fiber_minimum_pattern(x: &Permutation, barring: &Barring) -> bool {
    !contains_pattern(x, Pattern::P31_DOWN2, barring) && !contains_pattern(x, Pattern::P_UP2_31, barring)
}

/// Avoids `13_2` and `^213`.
pub fn is_fiber_maximum_pattern(x: &Permutation, barring: &Barring) -> bool {
    !contains_pattern(x, Pattern::P13_DOWN2, barring) && !contains_pattern(x, Pattern::P_UP2_13, barring)
}
