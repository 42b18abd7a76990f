use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::json;
use thiserror::Error;

use cambrian::cambrian::{
    c_vectors, cambrian_lattice, is_sortable, is_sortable_recursive, orientation_of, sortable_by_filter,
    sortable_elements, sorting_word, CambrianLattice, CoxeterElement,
};
use cambrian::coxeter::{CoxeterMatrix, CoxeterSystem, Family, WeakOrder, Word, DEFAULT_MAX_ORDER};
use cambrian::fan::{
    cambrian_fan_by_classes, cambrian_fan_by_cvectors, compare_fans, coxeter_fan,
    fan_adjacency_matches_cambrian_covers, region_adjacency_matches_weak_order, render_stereographic_svg,
    sample_points, Fan, Geometry, SampleReport, SvgOptions,
};
use cambrian::lattice::{congruence_from_edges, to_dot, DotStyle, EdgeSet, LocalForcing};
use cambrian::type_a::{
    coxeter_element_of_polygon, eta, fiber_extremes, tamari_like_lattice, verify_eta_is_quotient_map, Barring,
    Permutation, PolygonQ, TypeA,
};

use crate::args::{CambrianArgs, CongruenceArgs, FanArgs, Format, GroupArgs, GroupSource, Output, TamariArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] cambrian::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use cambrian::Error as E;
        match self {
            CliError::Verification(_) => 3,
            CliError::Core(
                E::NotACongruence(_)
                | E::NotALattice(..)
                | E::NotPolygonal { .. }
                | E::NonConvexUnion(_)
                | E::MismatchWithClassFan(_),
            ) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

/// Enumeration cap, overridable through `CAMBRIAN_MAX_ORDER`.
pub fn max_order() -> CliResult<usize> {
    match std::env::var("CAMBRIAN_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("CAMBRIAN_MAX_ORDER must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

pub fn load_system(source: &GroupSource) -> CliResult<CoxeterSystem> {
    if let Some(path) = &source.matrix {
        let text = fs::read_to_string(path)?;
        let rows: Vec<Vec<u32>> =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return Ok(CoxeterSystem::build(CoxeterMatrix::new(rows)?)?);
    }
    let label = source.label.as_deref().unwrap_or_default();
    Ok(CoxeterSystem::from_label(label)?)
}

pub fn weak_order(system: &CoxeterSystem) -> CliResult<WeakOrder> {
    Ok(WeakOrder::new(system, max_order()?)?)
}

fn format_of(output: &Output, allowed: &[Format]) -> CliResult<Option<Format>> {
    let format = output.export.or_else(|| {
        let ext = output.out.as_deref()?.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "dot" | "gv" => Some(Format::Dot),
            "json" => Some(Format::Json),
            "svg" => Some(Format::Svg),
            _ => None,
        }
    });
    match format {
        Some(f) if !allowed.contains(&f) => Err(CliError::Input(format!(
            "export format {f:?} is not available here; use one of {allowed:?}"
        ))),
        _ => Ok(format),
    }
}

/// Writes an export to `--out` or standard output.
fn emit(output: &Output, content: &str) -> CliResult {
    match &output.out {
        Some(path) => write_file(path, content),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: &str) -> CliResult {
    fs::write(path, content)?;
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("export types serialize");
    s.push('\n');
    s
}

fn parse_c(system: &CoxeterSystem, text: &str) -> CliResult<CoxeterElement> {
    Ok(CoxeterElement::parse(system, text)?)
}

pub fn group(args: &GroupArgs) -> CliResult {
    let system = load_system(&args.group)?;
    let weak = weak_order(&system)?;
    let summary = system.summary(weak.len());
    let longest = weak.length(weak.longest());
    match format_of(&args.output, &[Format::Dot, Format::Json])? {
        Some(Format::Dot) => {
            let name = system.name();
            emit(
                &args.output,
                &to_dot(
                    weak.lattice(),
                    &DotStyle {
                        name: &name,
                        ..Default::default()
                    },
                ),
            )
        }
        Some(_) => {
            let words: Vec<String> = (0..weak.len()).map(|k| weak.word(k).to_string()).collect();
            let value = json!({
                "group": system.name(),
                "rank": summary.rank,
                "matrix": summary.matrix,
                "order": summary.order,
                "positive_roots": summary.positive_root_count,
                "longest_length": longest,
                "elements": words,
                "covers": weak.lattice().edges(),
            });
            emit(&args.output, &to_json(&value))
        }
        None => {
            println!("group {}", system.name());
            println!("rank {}", summary.rank);
            println!("order {}", summary.order);
            println!("positive roots {}", summary.positive_root_count);
            println!("longest element length {longest}");
            Ok(())
        }
    }
}

/// Reads a group element as a word, `e`, or for type A a permutation in
/// one-line notation.
fn parse_element(system: &CoxeterSystem, weak: &WeakOrder, text: &str) -> CliResult<usize> {
    let text = text.trim();
    let n = system.rank();
    let letters = if text == "e" {
        Vec::new()
    } else if text.chars().all(|ch| ch.is_ascii_digit()) && text.len() == n + 1 && is_type_a(system) {
        let p: Permutation = text.parse()?;
        p.reduced_word()
    } else {
        Word::parse(text)
            .ok_or_else(|| CliError::Input(format!("cannot parse element `{text}`")))?
            .0
    };
    if let Some(&s) = letters.iter().find(|&&s| s >= n) {
        return Err(CliError::Input(format!(
            "generator s{} out of range in `{text}`",
            s + 1
        )));
    }
    Ok(weak.index_of_word(&letters))
}

fn is_type_a(system: &CoxeterSystem) -> bool {
    system
        .label()
        .is_some_and(|l| l.factors.len() == 1 && matches!(l.factors[0], Family::A(_)))
}

pub fn congruence(args: &CongruenceArgs) -> CliResult {
    let system = load_system(&args.group)?;
    let weak = weak_order(&system)?;
    let lattice = weak.lattice();
    let mut seed = EdgeSet::empty(lattice.edge_count());
    for spec in &args.edges {
        let (lo, hi) = spec
            .split_once(':')
            .ok_or_else(|| CliError::Input(format!("edge `{spec}` must be written lower:upper")))?;
        let (a, b) = (parse_element(&system, &weak, lo)?, parse_element(&system, &weak, hi)?);
        let e = lattice
            .edge_index(a, b)
            .ok_or_else(|| CliError::Input(format!("`{spec}` is not a cover relation")))?;
        seed.insert(e);
    }
    let forcing = LocalForcing::new(lattice)?;
    let closed = forcing.closure(&seed);
    let cong = congruence_from_edges(lattice, &closed)?;
    match format_of(&args.output, &[Format::Dot, Format::Json])? {
        Some(Format::Dot) => {
            let name = system.name();
            let style = DotStyle {
                name: &name,
                contracted: Some(&closed),
                highlighted: Some(&seed),
            };
            emit(&args.output, &to_dot(lattice, &style))
        }
        Some(_) => {
            let labels: Vec<&str> = (0..lattice.len()).map(|x| lattice.label(x)).collect();
            let value = json!({
                "group": system.name(),
                "labels": labels,
                "seed_edges": seed.iter().map(|e| lattice.edge(e)).collect::<Vec<_>>(),
                "congruence": cong.export(lattice),
            });
            emit(&args.output, &to_json(&value))
        }
        None => {
            println!("seed edges {}", seed.len());
            println!("contracted edges {}", closed.len());
            println!("classes {}", cong.class_count());
            for class in cong.classes() {
                let words: Vec<&str> = class.iter().map(|&x| lattice.label(x)).collect();
                println!("  {{{}}}", words.join(", "));
            }
            Ok(())
        }
    }
}

/// Runs the cross-checks behind `cambrian --verify`; returns the first
/// failure as a witness.
pub fn check_cambrian(weak: &WeakOrder, c: &CoxeterElement, camb: &CambrianLattice) -> Result<(), String> {
    let system = weak.system();
    let filtered = sortable_by_filter(weak, c);
    if filtered != camb.sortables {
        return Err(format!(
            "search tree finds {} sortables, filter finds {}",
            camb.len(),
            filtered.len()
        ));
    }
    let mut bottoms = camb.congruence.bottoms().to_vec();
    bottoms.sort_unstable();
    if let Some(k) = bottoms.iter().zip(&filtered).find(|(a, b)| a != b).map(|(a, _)| *a) {
        return Err(format!("class bottom {} is not sortable", weak.word(k)));
    }
    for k in 0..weak.len() {
        let w = weak.element(k);
        if is_sortable(system, w, c) != is_sortable_recursive(system, w, c) {
            return Err(format!("sortability tests disagree on {}", weak.word(k)));
        }
    }
    let lattice = weak.lattice();
    for (i, &a) in filtered.iter().enumerate() {
        for &b in &filtered[i + 1..] {
            let m = lattice.meet(a, b).map_err(|e| e.to_string())?;
            let j = lattice.join(a, b).map_err(|e| e.to_string())?;
            for (op, x) in [("meet", m), ("join", j)] {
                if filtered.binary_search(&x).is_err() {
                    return Err(format!("{op} of {} and {} is not sortable", weak.word(a), weak.word(b)));
                }
            }
        }
    }
    Ok(())
}

pub fn cambrian(args: &CambrianArgs) -> CliResult {
    let system = load_system(&args.group)?;
    let weak = weak_order(&system)?;
    let c = parse_c(&system, &args.c)?;
    let camb = cambrian_lattice(&weak, &c)?;
    if args.verify {
        check_cambrian(&weak, &c, &camb).map_err(CliError::Verification)?;
    }
    match format_of(&args.output, &[Format::Dot, Format::Json])? {
        Some(Format::Dot) => {
            let name = format!("{} {}", system.name(), c.word());
            emit(
                &args.output,
                &to_dot(
                    &camb.lattice,
                    &DotStyle {
                        name: &name,
                        ..Default::default()
                    },
                ),
            )
        }
        Some(_) => {
            let sortables: Vec<String> = camb.sortables.iter().map(|&k| weak.word(k).to_string()).collect();
            let classes: Vec<Vec<String>> = camb
                .congruence
                .classes()
                .iter()
                .map(|cl| cl.iter().map(|&k| weak.word(k).to_string()).collect())
                .collect();
            let value = json!({
                "group": system.name(),
                "coxeter_element": c.word().to_string(),
                "orientation": orientation_of(&system, &c).to_string(),
                "sortables": sortables,
                "covers": camb.lattice.edges(),
                "classes": classes,
                "verified": args.verify,
            });
            emit(&args.output, &to_json(&value))
        }
        None => {
            println!("group {}", system.name());
            println!("coxeter element {} ({})", c.word(), orientation_of(&system, &c));
            println!("classes {}", camb.congruence.class_count());
            println!("sortables {}", camb.len());
            println!("cover relations {}", camb.lattice.edge_count());
            if args.verify {
                println!("checks passed");
            }
            Ok(())
        }
    }
}

pub fn sortable(args: &CambrianArgs) -> CliResult {
    let system = load_system(&args.group)?;
    let weak = weak_order(&system)?;
    let c = parse_c(&system, &args.c)?;
    let tree = sortable_elements(&weak, &c);
    if args.verify {
        let camb = cambrian_lattice(&weak, &c)?;
        check_cambrian(&weak, &c, &camb).map_err(CliError::Verification)?;
    }
    match format_of(&args.output, &[Format::Dot, Format::Json])? {
        Some(Format::Dot) => {
            let mut out = String::new();
            writeln!(out, "digraph \"{} {} search tree\" {{", system.name(), c.word()).unwrap();
            writeln!(out, "  node [shape=plaintext, fontname=\"Helvetica\"];").unwrap();
            for (k, &v) in tree.nodes.iter().enumerate() {
                writeln!(
                    out,
                    "  n{k} [label=\"{}\"];",
                    sorting_word(&system, weak.element(v), c.letters())
                )
                .unwrap();
            }
            for (k, p) in tree.parent.iter().enumerate() {
                if let Some(p) = p {
                    let s = tree.words[k].letters().last().copied().unwrap_or_default();
                    writeln!(out, "  n{p} -> n{k} [label=\"s{}\"];", s + 1).unwrap();
                }
            }
            out.push_str("}\n");
            emit(&args.output, &out)
        }
        Some(_) => {
            let mut records = Vec::with_capacity(tree.len());
            for v in tree.sorted_elements() {
                let w = weak.element(v);
                let sw = sorting_word(&system, w, c.letters());
                let cv = c_vectors(&system, w, &c)?;
                let cvecs: Vec<_> = cv
                    .roots
                    .iter()
                    .zip(&cv.vectors)
                    .map(|(r, v)| json!({"root": r, "coordinates": v}))
                    .collect();
                records.push(json!({
                    "element": weak.word(v).to_string(),
                    "sorting_word": sw.to_string(),
                    "letters": sw.letters.letters(),
                    "dividers": sw.dividers,
                    "subsets": sw.passes,
                    "skip_table": sw.skips,
                    "c_vectors": cvecs,
                }));
            }
            let value = json!({
                "group": system.name(),
                "coxeter_element": c.word().to_string(),
                "sortables": records,
            });
            emit(&args.output, &to_json(&value))
        }
        None => {
            println!("{} sortable elements for {}", tree.len(), c.word());
            for v in tree.sorted_elements() {
                let w = weak.element(v);
                let sw = sorting_word(&system, w, c.letters());
                let cv = c_vectors(&system, w, &c)?;
                let roots: Vec<String> = cv.roots.iter().map(ToString::to_string).collect();
                println!("{sw}  C = {{{}}}", roots.join(", "));
            }
            Ok(())
        }
    }
}

/// Builds the requested fan and checks it against sampled points. Returns
/// the fan and a report, or the first failed check.
pub fn build_fan(
    weak: &WeakOrder,
    c: Option<&CoxeterElement>,
    samples: usize,
    seed: u64,
) -> CliResult<(Fan, Vec<String>)> {
    let geometry = Geometry::new(weak.system());
    let points = sample_points(&geometry, samples, seed);
    let mut report = Vec::new();
    let fan = match c {
        None => {
            let fan = coxeter_fan(weak);
            if !region_adjacency_matches_weak_order(weak, &fan) {
                return Err(CliError::Verification(
                    "region adjacency differs from the weak order".into(),
                ));
            }
            fan
        }
        Some(c) => {
            let camb = cambrian_lattice(weak, c)?;
            let by_classes = cambrian_fan_by_classes(weak, &camb.congruence)?;
            let by_normals = cambrian_fan_by_cvectors(weak, &camb, c)?;
            let cmp = compare_fans(weak, &geometry, &by_classes, &by_normals, &points);
            report.push(format!(
                "constructions agree on {} points, {} disagreements, {}/{} midpoint failures",
                cmp.points, cmp.disagreements, cmp.midpoint_failures, cmp.midpoints
            ));
            if !cmp.agrees() {
                return Err(CliError::Verification(
                    "cone membership differs between constructions".into(),
                ));
            }
            if !fan_adjacency_matches_cambrian_covers(&by_normals, &camb.lattice) {
                return Err(CliError::Verification(
                    "cone adjacency differs from the Cambrian covers".into(),
                ));
            }
            by_normals
        }
    };
    let cover = SampleReport::of(&fan, &points);
    report.push(format!(
        "{} sampled points, {} uncovered, {} in several cones",
        cover.points, cover.uncovered, cover.overlapping
    ));
    if !cover.is_partition() {
        return Err(CliError::Verification(
            "sampled points are not covered exactly once".into(),
        ));
    }
    Ok((fan, report))
}

pub fn fan(args: &FanArgs) -> CliResult {
    let system = load_system(&args.group)?;
    let weak = weak_order(&system)?;
    let c = args.c.as_deref().map(|t| parse_c(&system, t)).transpose()?;
    let (fan, report) = build_fan(&weak, c.as_ref(), args.samples, args.seed)?;
    let geometry = Geometry::new(&system);
    match format_of(&args.output, &[Format::Svg, Format::Json])? {
        Some(Format::Svg) => {
            let title = match &c {
                Some(c) => format!("{} {}", system.name(), c.word()),
                None => system.name(),
            };
            let svg = render_stereographic_svg(
                &fan,
                &geometry,
                &SvgOptions {
                    title,
                    ..Default::default()
                },
            )?;
            emit(&args.output, &svg)
        }
        Some(_) => emit(&args.output, &to_json(&fan.export(&geometry))),
        None => {
            println!("cones {}", fan.len());
            println!("adjacencies {}", fan.adjacencies.len());
            println!("simplicial {}", fan.cones.iter().all(|k| k.is_simplicial(fan.rank)));
            for line in report {
                println!("{line}");
            }
            Ok(())
        }
    }
}

pub fn tamari(args: &TamariArgs) -> CliResult {
    if args.n == 0 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let barring = match &args.barring {
        Some(text) => text.parse::<Barring>()?,
        None => Barring::tamari(args.n),
    };
    if barring.n() != args.n {
        return Err(CliError::Input(format!(
            "barring `{barring}` needs {} letters for n = {}",
            args.n + 1,
            args.n
        )));
    }
    let q = PolygonQ::new(barring);
    if let Some(text) = &args.perm {
        let x: Permutation = text.parse()?;
        if x.len() != args.n + 1 {
            return Err(CliError::Input(format!(
                "permutation `{x}` must have {} entries",
                args.n + 1
            )));
        }
        let t = eta(&x, &q);
        return match format_of(&args.output, &[Format::Svg, Format::Json])? {
            Some(Format::Svg) => emit(&args.output, &t.to_svg(&q)),
            Some(_) => emit(&args.output, &to_json(&t.export(&q))),
            None => {
                println!("{t}");
                Ok(())
            }
        };
    }
    if args.verify {
        let ctx = TypeA::new(q.clone())?;
        let fibers = fiber_extremes(&ctx);
        if !fibers.passed() {
            return Err(CliError::Verification(
                fibers.witness.unwrap_or_else(|| "fiber check failed".into()),
            ));
        }
        let report = verify_eta_is_quotient_map(&ctx)?;
        if !report.passed() {
            return Err(CliError::Verification(format!("{report:?}")));
        }
    }
    let flips = tamari_like_lattice(&q)?;
    match format_of(&args.output, &[Format::Dot, Format::Json])? {
        Some(Format::Dot) => {
            let name = format!("triangulations {}", q.barring());
            emit(
                &args.output,
                &to_dot(
                    &flips.lattice,
                    &DotStyle {
                        name: &name,
                        ..Default::default()
                    },
                ),
            )
        }
        Some(_) => {
            let value = json!({
                "n": q.n(),
                "barring": q.barring(),
                "triangulations": flips.triangulations.iter().map(|t| t.export(&q)).collect::<Vec<_>>(),
                "covers": flips.lattice.edges(),
            });
            emit(&args.output, &to_json(&value))
        }
        None => {
            let system = CoxeterSystem::from_label(&format!("A{}", args.n))?;
            println!("barring {}", q.barring());
            println!("coxeter element {}", coxeter_element_of_polygon(&system, &q)?.word());
            println!("triangulations {}", flips.triangulations.len());
            println!("flips {}", flips.lattice.edge_count());
            if args.verify {
                println!("checks passed");
            }
            Ok(())
        }
    }
}
