use cambrian::cambrian::{cambrian_congruence_with, coxeter_element, CambrianLattice, CoxeterElement, Orientation};
use cambrian::coxeter::{CoxeterSystem, WeakOrder};
use cambrian::lattice::{congruence_from_edges, is_isomorphism, polygonal_intervals, EdgeSet, LocalForcing};
use cambrian::type_a::{
    contains_pattern, fiber_extremes, verify_eta_is_quotient_map, Barring, Pattern, Permutation, PolygonQ, TypeA,
};

use crate::args::VerifyArgs;
use crate::commands::{build_fan, check_cambrian, max_order, CliError, CliResult};

type Check = Result<String, String>;

struct Suite {
    failures: Vec<String>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Check) {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(witness) => {
                println!("FAIL {name}: {witness}");
                self.failures.push(format!("{name}: {witness}"));
            }
        }
    }
}

fn groups(args: &VerifyArgs) -> Vec<(String, Option<usize>)> {
    let mut out: Vec<(String, Option<usize>)> = vec![("A2".into(), Some(5)), ("B2".into(), Some(6))];
    let dihedral: Vec<u32> = if args.all { (3..=8).collect() } else { vec![5, 6] };
    out.extend(dihedral.into_iter().map(|m| (format!("I2({m})"), Some(m as usize + 2))));
    if args.max_rank >= 3 {
        out.extend([
            ("A3".into(), Some(14)),
            ("B3".into(), Some(20)),
            ("H3".into(), Some(32)),
        ]);
        if args.all {
            out.push(("A2xA1".into(), Some(10)));
        }
    }
    if args.max_rank >= 4 && args.all {
        out.push(("A4".into(), Some(42)));
    }
    out
}

fn build(label: &str) -> Result<WeakOrder, String> {
    let sys = CoxeterSystem::from_label(label).map_err(|e| e.to_string())?;
    let cap = max_order().map_err(|e| e.to_string())?;
    WeakOrder::new(&sys, cap).map_err(|e| e.to_string())
}

fn group_orders(args: &VerifyArgs) -> Check {
    let mut expect: Vec<(String, usize)> = vec![("A2".into(), 6), ("B2".into(), 8)];
    expect.extend((3..=8u32).map(|m| (format!("I2({m})"), 2 * m as usize)));
    if args.max_rank >= 3 {
        expect.extend([("A3".into(), 24), ("B3".into(), 48), ("H3".into(), 120)]);
    }
    if args.max_rank >= 4 {
        expect.push(("A4".into(), 120));
    }
    for (label, order) in &expect {
        let got = build(label)?.len();
        if got != *order {
            return Err(format!("{label} has order {got}, expected {order}"));
        }
    }
    Ok(format!("{} groups", expect.len()))
}

fn hexagon_forcing() -> Check {
    let weak = build("A2")?;
    let lattice = weak.lattice();
    let forcing = LocalForcing::new(lattice).map_err(|e| e.to_string())?;
    let polygons = polygonal_intervals(lattice).map_err(|e| e.to_string())?;
    let hex = polygons
        .iter()
        .find(|p| p.sides() == 6)
        .ok_or("no hexagon in the weak order of A2")?;
    for e in 0..lattice.edge_count() {
        let closed = forcing.closure(&EdgeSet::from_edges(lattice.edge_count(), [e]));
        let mut expect = vec![e];
        if hex.is_bottom_or_top(e) {
            expect.push(hex.opposite(e).unwrap());
            expect.extend(hex.side_edges());
        }
        expect.sort_unstable();
        expect.dedup();
        let got: Vec<usize> = closed.iter().collect();
        if got != expect {
            let (lo, hi) = lattice.edge(e);
            return Err(format!(
                "closure of {}<{} has {} edges, expected {}",
                weak.word(lo),
                weak.word(hi),
                got.len(),
                expect.len()
            ));
        }
    }
    Ok("side edges closed, bottom/top edges force opposite and both sides".into())
}

fn tamari_congruence() -> Check {
    let weak = build("A3")?;
    let lattice = weak.lattice();
    let edge = |lo: &str, hi: &str| -> Result<usize, String> {
        let idx = |p: &str| weak.index_of_word(&p.parse::<Permutation>().unwrap().reduced_word());
        lattice
            .edge_index(idx(lo), idx(hi))
            .ok_or(format!("{lo}<{hi} is not a cover"))
    };
    let seed = EdgeSet::from_edges(lattice.edge_count(), [edge("1324", "3124")?, edge("1243", "1423")?]);
    let forcing = LocalForcing::new(lattice).map_err(|e| e.to_string())?;
    let cong = congruence_from_edges(lattice, &forcing.closure(&seed)).map_err(|e| e.to_string())?;
    if cong.class_count() != 14 {
        return Err(format!("{} classes, expected 14", cong.class_count()));
    }
    let ctx = TypeA::with_weak_order(PolygonQ::new(Barring::tamari(3)), weak.clone()).map_err(|e| e.to_string())?;
    let quotient = cong.quotient(lattice).map_err(|e| e.to_string())?;
    let map: Vec<usize> = cong.bottoms().iter().map(|&b| ctx.eta_index[b]).collect();
    if !is_isomorphism(&map, &quotient, &ctx.flips.lattice) {
        return Err("quotient is not isomorphic to the flip lattice".into());
    }
    let report = verify_eta_is_quotient_map(&ctx).map_err(|e| e.to_string())?;
    if !report.homomorphism {
        return Err("the map to triangulations is not a lattice homomorphism".into());
    }
    Ok("14 classes, quotient isomorphic to the flip lattice".into())
}

/// Sortables, classes, Cambrian lattice, sortability tests and sublattice
/// checks for every orientation.
fn cambrian_checks(label: &str, expect: Option<usize>) -> Check {
    let weak = build(label)?;
    let sys = weak.system();
    let forcing = LocalForcing::new(weak.lattice()).map_err(|e| e.to_string())?;
    let orientations = Orientation::all(sys.matrix());
    let mut size = 0;
    for o in &orientations {
        let c = coxeter_element(sys, o).map_err(|e| e.to_string())?;
        let cong = cambrian_congruence_with(&weak, &forcing, &c).map_err(|e| format!("{o}: {e}"))?;
        let camb = CambrianLattice::assemble(&weak, &c, cong).map_err(|e| format!("{o}: {e}"))?;
        check_cambrian(&weak, &c, &camb).map_err(|w| format!("{o}: {w}"))?;
        if expect.is_some_and(|n| n != camb.len()) {
            return Err(format!("{o}: {} sortables, expected {}", camb.len(), expect.unwrap()));
        }
        let rank = sys.rank();
        if let Some(x) = camb.lattice.degrees().iter().position(|&d| d != rank) {
            return Err(format!(
                "{o}: {} has degree {} in the Hasse diagram",
                weak.word(camb.sortables[x]),
                camb.lattice.degrees()[x]
            ));
        }
        size = camb.len();
    }
    Ok(format!("{} orientations, {size} elements each", orientations.len()))
}

fn fan_checks(label: &str, samples: usize, seed: u64) -> Check {
    let weak = build(label)?;
    let sys = weak.system();
    let mut lines = 0;
    build_fan(&weak, None, samples, seed).map_err(|e| format!("Coxeter fan: {e}"))?;
    for o in Orientation::all(sys.matrix()) {
        let c: CoxeterElement = coxeter_element(sys, &o).map_err(|e| e.to_string())?;
        build_fan(&weak, Some(&c), samples, seed).map_err(|e| format!("{o}: {e}"))?;
        lines += 1;
    }
    Ok(format!("Coxeter fan and {lines} Cambrian fans, {samples} points each"))
}

fn type_a_checks(max_n: usize) -> Check {
    let mut count = 0;
    for n in 1..=max_n {
        let sys = CoxeterSystem::from_label(&format!("A{n}")).map_err(|e| e.to_string())?;
        let weak = WeakOrder::new(&sys, max_order().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for b in Barring::all(n) {
            let ctx = TypeA::with_weak_order(PolygonQ::new(b.clone()), weak.clone()).map_err(|e| e.to_string())?;
            let fibers = fiber_extremes(&ctx);
            if !fibers.passed() {
                return Err(format!("{b}: {}", fibers.witness.unwrap_or_default()));
            }
            let report = verify_eta_is_quotient_map(&ctx).map_err(|e| e.to_string())?;
            if !report.passed() {
                return Err(format!("{b}: {report:?}"));
            }
            count += 1;
        }
    }
    let x: Permutation = "4213".parse().unwrap();
    let tamari = Barring::tamari(3);
    if !contains_pattern(&x, Pattern::P312, &tamari) || contains_pattern(&x, Pattern::P132, &tamari) {
        return Err("4213 should contain 312 and avoid 132".into());
    }
    Ok(format!("{count} barrings up to n = {max_n}"))
}

pub fn run(args: &VerifyArgs) -> CliResult {
    if args.max_rank < 2 {
        return Err(CliError::Input("--max-rank must be at least 2".into()));
    }
    let mut suite = Suite { failures: Vec::new() };
    suite.record("group orders", group_orders(args));
    suite.record("hexagon forcing", hexagon_forcing());
    if args.max_rank >= 3 {
        suite.record("tamari congruence", tamari_congruence());
    }
    for (label, expect) in groups(args) {
        suite.record(&format!("cambrian {label}"), cambrian_checks(&label, expect));
    }
    for (label, _) in groups(args) {
        suite.record(&format!("fan {label}"), fan_checks(&label, args.samples, args.seed));
    }
    let max_n = if args.all {
        args.max_rank.min(4)
    } else {
        args.max_rank.min(3)
    };
    suite.record("type A fibers", type_a_checks(max_n));
    match suite.failures.first() {
        None => {
            println!("all checks passed");
            Ok(())
        }
        Some(first) => Err(CliError::Verification(first.clone())),
    }
}
