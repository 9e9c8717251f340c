//! Acceptance suite: one line per criterion, nonzero exit if a blocking one fails.

use std::time::{Duration, Instant};

use homocalc::chainmaps::{
    bar_cell_map, chain_map_lift, induced_homology_map, inflation_map, restriction_map, same_lattice,
};
use homocalc::cocycles::{h1_via_cocycles, h2_via_cocycles};
use homocalc::functors::poincare_dims;
use homocalc::groups::{abelianization_invariants, subgroup, sylow_subgroup, Permutation};
use homocalc::intlinalg::DenseMatrix;
use homocalc::resolutions::{bar_resolution, verify_resolution};
use homocalc::{
    group_cohomology, group_homology, schur_multiplier, AbelianInvariants, Error, FiniteGroup, GModule, GroupExpr,
    GroupHom, Int, Resolution, ResolutionChoice, ResolutionKind, Word,
};

type Outcome = std::result::Result<String, String>;

fn group(s: &str) -> FiniteGroup {
    GroupExpr::parse(s).unwrap().build().unwrap()
}

fn perm(s: &str, degree: usize) -> Permutation {
    Permutation::parse(s).unwrap().extended(degree)
}

fn inv(free: usize, t: &[i64]) -> AbelianInvariants {
    AbelianInvariants::from_i64(free, t)
}

/// Every group of order at most 8 up to isomorphism.
const SMALL: [&str; 14] =
    ["C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8"];

fn trivial_modules(g: &FiniteGroup) -> Vec<GModule> {
    vec![
        GModule::integers(g),
        GModule::trivial(g, 2),
        GModule::trivial(g, 3),
        GModule::trivial(g, 4),
        GModule::trivial(g, 6),
    ]
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn c1_cyclic_closed_forms() -> Outcome {
    let mut checked = 0;
    let start = Instant::now();
    for m in [2usize, 3, 4, 5, 6, 12] {
        let g = group(&format!("C{m}"));
        let z = GModule::integers(&g);
        let res = ResolutionChoice::Kind(ResolutionKind::Cyclic);
        for n in 1..=10 {
            let want = if n % 2 == 1 { AbelianInvariants::cyclic(m as u64) } else { AbelianInvariants::trivial() };
            expect(&format!("H_{n}(C{m})"), group_homology(&g, n, &z, res).map_err(e)?, want)?;
            let want = if n % 2 == 0 { AbelianInvariants::cyclic(m as u64) } else { AbelianInvariants::trivial() };
            expect(&format!("H^{n}(C{m})"), group_cohomology(&g, n, &z, res).map_err(e)?, want)?;
            checked += 2;
        }
    }
    let cyclic_time = start.elapsed();
    if cyclic_time > Duration::from_secs(5) {
        return Err(format!("cyclic resolution took {cyclic_time:?} > 5s"));
    }
    for m in 2..=4usize {
        let g = group(&format!("C{m}"));
        let z = GModule::integers(&g);
        for kind in [ResolutionKind::Bar, ResolutionKind::NormalizedBar] {
            for n in 1..=4 {
                let want = if n % 2 == 1 { AbelianInvariants::cyclic(m as u64) } else { AbelianInvariants::trivial() };
                expect(&format!("H_{n}(C{m}) {kind}"), group_homology(&g, n, &z, kind.into()).map_err(e)?, want)?;
                let want = if n % 2 == 0 { AbelianInvariants::cyclic(m as u64) } else { AbelianInvariants::trivial() };
                expect(&format!("H^{n}(C{m}) {kind}"), group_cohomology(&g, n, &z, kind.into()).map_err(e)?, want)?;
                checked += 2;
            }
        }
    }
    Ok(format!("{checked} values matched; cyclic part {:.2}s", cyclic_time.as_secs_f64()))
}

fn c2_h3_s3() -> Outcome {
    let g = group("S3");
    let z = GModule::integers(&g);
    let mut notes = Vec::new();
    for kind in [ResolutionKind::Bar, ResolutionKind::NormalizedBar] {
        let t = Instant::now();
        let h = group_homology(&g, 3, &z, kind.into()).map_err(e)?;
        expect(&format!("H_3(S3) {kind}"), h.clone(), inv(0, &[6]))?;
        expect("primary form", h.primary(), vec![Int::from(2), Int::from(3)])?;
        let dt = t.elapsed();
        if dt > Duration::from_secs(60) {
            return Err(format!("{kind} took {dt:?} > 60s"));
        }
        notes.push(format!("{kind} {:.2}s", dt.as_secs_f64()));
    }
    Ok(format!("Z/6 from {}", notes.join(", ")))
}

fn c3_induced_golden() -> Outcome {
    let g1 = homocalc::groups::from_cycles(&["(1,2,3)", "(1,2)"]).map_err(e)?;
    let g2 = homocalc::groups::from_cycles(&["(1,2,3)", "(2,3)"]).map_err(e)?;
    let phi = GroupHom::from_permutations(&g1, &g2, &[perm("(1,2,3)", 3), perm("(2,3)", 3)]).map_err(e)?;
    let r1 = bar_resolution(&g1, 4).map_err(e)?;
    let r2 = bar_resolution(&g2, 4).map_err(e)?;
    let cm = chain_map_lift(&r1, &r2, &phi).map_err(e)?;
    cm.verify().map_err(e)?;
    let z = GModule::integers(&g2);
    let h = induced_homology_map(&cm, 3, &z).map_err(e)?;
    let image = h.image();
    expect("image primary invariants", image.primary(), vec![Int::from(2), Int::from(3)])?;
    if !h.is_isomorphism() {
        return Err("H_3(phi) is not an isomorphism".into());
    }
    let cell = bar_cell_map(&r1, &r2, &phi).map_err(e)?;
    cell.verify().map_err(e)?;
    expect("cell map agrees with the lift", induced_homology_map(&cell, 3, &z).map_err(e)?, h)?;
    Ok(format!("image {image} (primary [2,3]), isomorphism"))
}

fn c4_h1_law() -> Outcome {
    let table: [(&str, &[i64]); 14] = [
        ("C2", &[2]),
        ("C3", &[3]),
        ("C4", &[4]),
        ("C5", &[5]),
        ("C6", &[6]),
        ("C7", &[7]),
        ("C8", &[8]),
        ("C2xC2", &[2, 2]),
        ("S3", &[2]),
        ("D4", &[2, 2]),
        ("Q8", &[2, 2]),
        ("A4", &[3]),
        ("S4", &[2]),
        ("C2xC4", &[2, 4]),
    ];
    for (name, want) in table {
        let g = group(name);
        let z = GModule::integers(&g);
        let kind = if name == "S4" { ResolutionChoice::Kind(ResolutionKind::NormalizedBar) } else { ResolutionChoice::Auto };
        let ab = abelianization_invariants(&g).map_err(e)?;
        expect(&format!("G/[G,G] of {name}"), ab.clone(), inv(0, want))?;
        expect(&format!("H_1({name})"), group_homology(&g, 1, &z, kind).map_err(e)?, ab)?;
        expect(&format!("H_0({name})"), group_homology(&g, 0, &z, kind).map_err(e)?, inv(1, &[]))?;
    }
    Ok(format!("{} groups", table.len()))
}

fn c5_cocycle_oracle() -> Outcome {
    let mut pairs = 0;
    for name in SMALL {
        let g = group(name);
        let mut modules = trivial_modules(&g);
        if name == "C2" {
            let swap = DenseMatrix::<Int>::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
            modules.push(GModule::new(&g, vec![Int::from(3), Int::from(3)], vec![swap], "(Z/3)^2 swap").map_err(e)?);
        }
        for a in &modules {
            let r1 = group_cohomology(&g, 1, a, ResolutionChoice::Auto).map_err(e)?;
            let r2 = group_cohomology(&g, 2, a, ResolutionChoice::Auto).map_err(e)?;
            expect(&format!("H^1({name}, {})", a.label()), h1_via_cocycles(&g, a).map_err(e)?, r1)?;
            expect(&format!("H^2({name}, {})", a.label()), h2_via_cocycles(&g, a).map_err(e)?, r2)?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (group, module) pairs agree in degrees 1 and 2"))
}

/// `∂ D + D ∂ = 1` on the basis element `g f_j` of degree `k`.
fn homotopy_identity(r: &Resolution, k: usize, j: usize, g: usize) -> bool {
    let x = Word::basis(r.rank(k), j, g);
    let up = r.boundary_of(k + 1, &r.contracting_homotopy(k, &x).unwrap()).unwrap();
    let down = if k == 0 {
        r.homotopy_augmentation(&x.augmentation()).unwrap()
    } else {
        r.contracting_homotopy(k - 1, &r.boundary_of(k, &x).unwrap()).unwrap()
    };
    up.add(&down).unwrap() == x
}

fn c6_structural() -> Outcome {
    let mut resolutions = 0;
    let mut cells = 0;
    for name in SMALL {
        let g = group(name);
        for kind in ResolutionKind::ALL {
            if kind == ResolutionKind::Cyclic && !g.is_cyclic() {
                continue;
            }
            let r = Resolution::new(&g, kind, 4).map_err(e)?;
            let report = verify_resolution(&r).map_err(e)?;
            if !report.ok {
                return Err(format!("{name} {kind}: d^2 or acyclicity fails: {:?}", report.d_squared));
            }
            resolutions += 1;
        }
        let bar = bar_resolution(&g, 4).map_err(e)?;
        for k in 0..=3 {
            for j in 0..bar.rank(k) {
                for x in 0..g.order() {
                    if !homotopy_identity(&bar, k, j, x) {
                        return Err(format!("{name}: homotopy identity fails on g{} f{} in degree {k}", x + 1, j + 1));
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{resolutions} resolutions to depth 4; homotopy identity on {cells} cells"))
}

fn c7_exponent_vanishing() -> Outcome {
    let mut groups_checked = 0;
    for name in SMALL {
        let g = group(name);
        for a in trivial_modules(&g) {
            for n in 1..=3 {
                let h = group_cohomology(&g, n, &a, ResolutionChoice::Auto).map_err(e)?;
                let order = Int::from(g.order());
                if h.free_rank != 0 || h.torsion.iter().any(|t| (&order % t) != Int::from(0)) {
                    return Err(format!("H^{n}({name}, {}) = {h} is not killed by |G| = {order}", a.label()));
                }
                groups_checked += 1;
            }
        }
    }
    let s3 = group("S3");
    for m in [5, 7] {
        for n in 1..=2 {
            let h = group_cohomology(&s3, n, &GModule::trivial(&s3, m), ResolutionChoice::Auto).map_err(e)?;
            expect(&format!("H^{n}(S3, Z/{m})"), h, AbelianInvariants::trivial())?;
        }
    }
    Ok(format!("{groups_checked} cohomology groups killed by |G|; S3 with Z/5, Z/7 vanishes"))
}

fn c8_poincare() -> Outcome {
    let c2 = poincare_dims(&group("C2"), 2, 10).map_err(e)?;
    expect("C2 at p = 2", c2.dims, vec![1; 10])?;
    let c3 = poincare_dims(&group("C3"), 2, 10).map_err(e)?;
    expect("C3 at p = 2", c3.dims, vec![0; 10])?;
    Ok("C2: ten ones; C3: ten zeros".into())
}

fn a3(g: &FiniteGroup) -> Vec<usize> {
    let r = g.index_of(&perm("(1,2,3)", g.degree())).unwrap();
    let mask = g.closure(&[r]);
    (0..g.order()).filter(|&x| mask[x]).collect()
}

fn c9_functorial() -> Outcome {
    let s4 = group("S4");
    let s3 = homocalc::groups::from_cycles(&["(1,2,3)", "(1,2)"]).map_err(e)?;
    let into_s4 = GroupHom::from_permutations(&s3, &s4, &[perm("(1,2,3)", 4), perm("(1,2)", 4)]).map_err(e)?;
    let t = s3.index_of(&perm("(1,2)", 3)).unwrap();
    let (_, into_s3) = subgroup(&s3, &[t]).map_err(e)?;
    let c2_s4 = into_s3.then(&into_s4).map_err(e)?;
    let nbar = ResolutionChoice::Kind(ResolutionKind::NormalizedBar);
    for n in 0..=2 {
        for a in [GModule::integers(&s4), GModule::trivial(&s4, 2)] {
            let outer = restriction_map(&into_s4, &a, n, nbar).map_err(e)?;
            let inner = restriction_map(&into_s3, &a.restrict(&into_s4).map_err(e)?, n, nbar).map_err(e)?;
            let direct = restriction_map(&c2_s4, &a, n, nbar).map_err(e)?;
            expect(&format!("Res transitivity n = {n}, {}", a.label()), outer.then(&inner).map_err(e)?, direct)?;
        }
    }
    let z = GModule::integers(&s3);
    for p in [2u64, 3] {
        let (_, incl) = sylow_subgroup(&s3, p).map_err(e)?;
        for n in 1..=3 {
            let res = restriction_map(&incl, &z, n, nbar).map_err(e)?;
            if !res.kernel().p_part(p).is_trivial() {
                return Err(format!("Res to the Sylow {p}-subgroup kills p-torsion of H^{n}(S3)"));
            }
        }
    }
    let n3 = a3(&s3);
    let (_, into) = subgroup(&s3, &n3).map_err(e)?;
    for m in [2u64, 3] {
        let a = GModule::trivial(&s3, m);
        let inf = inflation_map(&s3, &n3, &a, 1, nbar).map_err(e)?;
        let res = restriction_map(&into, &a, 1, nbar).map_err(e)?;
        if !inf.then(&res).map_err(e)?.is_zero() {
            return Err(format!("Res o Inf is not zero for Z/{m}"));
        }
        if !same_lattice(&inf.image_lattice(), &res.kernel_lattice()) {
            return Err(format!("image(Inf) != ker(Res) for Z/{m}"));
        }
    }
    Ok("Res transitive on C2 < S3 < S4 (n <= 2); Sylow restriction injective on p-parts (n <= 3); Inf/Res exact at n = 1".into())
}

fn c10_schur_a5() -> Outcome {
    let g = group("A5");
    match schur_multiplier(&g) {
        Ok(h) if h == AbelianInvariants::cyclic(2) => Ok("Z/2".into()),
        Ok(h) => Err(format!("WRONG ANSWER {h}")),
        Err(err @ Error::Infeasible { .. }) => Err(format!("refused: {err}")),
        Err(err) => Err(format!("error: {err}")),
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, u64, bool); 10] = [
        (1, "cyclic closed forms", c1_cyclic_closed_forms, 60, true),
        (2, "H_3(S3) = Z/6 from bar and nbar", c2_h3_s3, 120, true),
        (3, "induced map golden test", c3_induced_golden, 120, true),
        (4, "H_1 = abelianization, H_0 = Z", c4_h1_law, 60, true),
        (5, "cocycle oracle equivalence", c5_cocycle_oracle, 120, true),
        (6, "structural suites", c6_structural, 120, true),
        (7, "exponent and vanishing laws", c7_exponent_vanishing, 120, true),
        (8, "Poincare dimensions", c8_poincare, 10, true),
        (9, "functorial maps", c9_functorial, 120, true),
        (10, "Schur multiplier of A5 (stretch)", c10_schur_a5, 1800, false),
    ];
    let mut blocking_failures = 0;
    for (id, label, run, limit, blocking) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let dt = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if dt > Duration::from_secs(limit) => Err(format!("{msg}, but took {:.1}s > {limit}s", dt.as_secs_f64())),
            other => other,
        };
        match &outcome {
            Ok(msg) => println!("criterion {id:>2} PASS  {label}: {msg} [{:.2}s, limit {limit}s]", dt.as_secs_f64()),
            Err(msg) => {
                let tag = if blocking { "" } else { " (non-blocking)" };
                println!("criterion {id:>2} FAIL{tag}  {label}: {msg} [{:.2}s]", dt.as_secs_f64());
                if blocking || msg.starts_with("WRONG") {
                    blocking_failures += 1;
                }
            }
        }
    }
    if blocking_failures > 0 {
        std::process::exit(1);
    }
}
