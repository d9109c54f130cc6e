//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;

use slicekit::abelian::{subgroup_from_rows, FgAbGroup, InvariantFactors};
use slicekit::cli::run_with;
use slicekit::group::{named_group, SubgroupLattice};
use slicekit::mackey::{
    check_mackey_axioms, hill_filtration, preset_mackey, quotient_mackey, reg_coh, restrict_mackey,
    MackeyFunctor, SubMackey,
};
use slicekit::slice::{
    cell_dual, em_tower_minus, em_tower_plus, geometric_fixed_points_cell, homotopy_filtration,
    irregular_tower_from_regular, pullback_degree, pullback_tower, slice_cells, EmTower,
    QuotientMap, SliceCell,
};

const GROUPS: &[&str] = &["trivial", "C2", "C3", "C4", "V4", "S3", "D8", "Q8"];
const FUNCTORS: &[&str] = &["burnside", "constant-Z", "constant-Z/2", "sign", "regular"];

/// Largest finite level enumerated element by element.
const BRUTE_FORCE_LIMIT: usize = 20_000;

struct Case {
    group: &'static str,
    functor: &'static str,
    m: MackeyFunctor,
}

fn lattice(name: &str) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(named_group(name).unwrap()))
}

fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for &group in GROUPS {
        let l = lattice(group);
        for &functor in FUNCTORS {
            let m = preset_mackey(&l, functor).unwrap();
            out.push(Case { group, functor, m });
        }
    }
    out
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// All elements of a finite group, as canonical coordinates.
fn enumerate(a: &FgAbGroup) -> Option<Vec<Vec<BigInt>>> {
    a.order()?;
    let exponent: usize = a
        .invariant_factors()
        .torsion
        .last()
        .map_or(1, |d| d.0.to_string().parse().unwrap());
    let n = a.ngens();
    let box_size = exponent.checked_pow(n as u32)?;
    if box_size > BRUTE_FORCE_LIMIT {
        return None;
    }
    let mut seen = BTreeSet::new();
    for mut code in 0..box_size {
        let x: Vec<BigInt> = (0..n)
            .map(|_| {
                let c = code % exponent;
                code /= exponent;
                big(c as i64)
            })
            .collect();
        seen.insert(a.canonical_coords(&x));
    }
    Some(seen.into_iter().collect())
}

/// Rank over Q of an integer matrix given by rows.
fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<Ratio<BigInt>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Ratio::from_integer(x.clone())).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != Ratio::from_integer(big(0))) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != Ratio::from_integer(big(0)) {
                let f = m[i][c].clone() / m[rank][c].clone();
                let pivot = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(pivot) {
                    *x -= p * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

fn same_levels(a: &SubMackey, b: &SubMackey) -> bool {
    a.levels().iter().zip(b.levels()).all(|(x, y)| x.same_as(y))
}

fn invariants(a: &FgAbGroup) -> InvariantFactors {
    a.invariant_factors().clone()
}

fn run(name: &str, f: impl FnOnce() -> String) -> bool {
    let start = Instant::now();
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(detail) => {
            println!("PASS  {name}: {detail} ({:.2?})", start.elapsed());
            true
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("FAIL  {name}: {msg}");
            false
        }
    }
}

fn mackey_axioms(cases: &[Case]) -> String {
    for c in cases {
        let report = check_mackey_axioms(&c.m);
        assert!(report.passed(), "{} {}: {report}", c.group, c.functor);
    }
    format!("{} functors", cases.len())
}

/// `x ∈ F^k M(H)` decided from the definition.
fn in_hill(m: &MackeyFunctor, h: usize, k: i64, x: &[BigInt]) -> bool {
    let l = m.lattice();
    l.subgroups_of(h)
        .into_iter()
        .filter(|&j| (l.order(j) as i64) < k)
        .all(|j| m.level(j).is_relation(&m.res(h, j).apply_coords(x)))
}

/// Compares `F^k M(H)` with a direct computation. Returns whether an oracle
/// applied.
fn hill_oracle(m: &MackeyFunctor, f: &SubMackey, h: usize, k: i64) -> bool {
    let l = m.lattice();
    let level = m.level(h);
    let sub = f.level(h);
    if let Some(elements) = enumerate(level) {
        let members: Vec<_> = elements.iter().filter(|x| in_hill(m, h, k, x)).collect();
        for x in &elements {
            assert_eq!(
                sub.contains(x),
                in_hill(m, h, k, x),
                "membership at H={h}, k={k}"
            );
        }
        assert_eq!(
            sub.group().order(),
            Some(big(members.len() as i64)),
            "order of F^{k} at H={h}"
        );
        return true;
    }
    let small: Vec<usize> = l
        .subgroups_of(h)
        .into_iter()
        .filter(|&j| (l.order(j) as i64) < k)
        .collect();
    let free = |a: &FgAbGroup| a.relations().rows() == 0;
    if !free(level) || !small.iter().all(|&j| free(m.level(j))) {
        return false;
    }
    // kernel of an integer matrix: rank from linear algebra over Q, and the
    // quotient embeds in a free group, so it is torsion-free
    let stacked: Vec<Vec<BigInt>> = (0..level.ngens())
        .map(|i| {
            small
                .iter()
                .flat_map(|&j| m.res(h, j).matrix().row(i).to_vec())
                .collect()
        })
        .collect();
    let expected_rank = level.ngens()
        - if small.is_empty() {
            0
        } else {
            rational_rank(&stacked)
        };
    assert_eq!(
        sub.group().free_rank(),
        expected_rank,
        "rank of F^{k} at H={h}"
    );
    for row in sub.generator_rows().row_vecs() {
        assert!(in_hill(m, h, k, &row), "generator outside F^{k} at H={h}");
    }
    let q = slicekit::abelian::quotient(sub.inclusion()).unwrap();
    assert!(q.group.torsion().is_empty(), "F^{k} not saturated at H={h}");
    true
}

fn hill_suite(cases: &[Case]) -> String {
    let mut functors: Vec<(String, MackeyFunctor)> = cases
        .iter()
        .map(|c| (format!("{} {}", c.group, c.functor), c.m.clone()))
        .collect();
    // slices of the minus towers supply torsion levels
    for c in cases {
        for (d, s) in em_tower_minus(&c.m).unwrap().slices() {
            functors.push((
                format!("{} {} slice {d}", c.group, c.functor),
                s.functor.clone(),
            ));
        }
    }
    let mut oracle_checks = 0;
    for (name, m) in &functors {
        let l = m.lattice();
        let order = l.group().order() as i64;
        let full = SubMackey::full(m);
        assert!(
            same_levels(&hill_filtration(m, 1), &full),
            "{name}: F^1 != M"
        );
        let mut previous = full;
        for k in 1..=order + 1 {
            let f = hill_filtration(m, k);
            assert!(f.is_closed(m), "{name}: F^{k} not closed");
            assert!(f.is_subset_of(&previous), "{name}: F^{k} not nested");
            for h in 0..l.len() {
                if (l.order(h) as i64) < k {
                    assert!(
                        f.level(h).group().is_trivial(),
                        "{name}: F^{k}(H={h}) nonzero"
                    );
                }
                if hill_oracle(m, &f, h, k) {
                    oracle_checks += 1;
                }
            }
            // restriction to each subgroup commutes with F^k
            for h in 0..l.len() {
                let r = restrict_mackey(m, h).unwrap();
                let fr = hill_filtration(&r.functor, k);
                for (i, &j) in r.subgroups.iter().enumerate() {
                    let moved = subgroup_from_rows(m.level(j), fr.level(i).generator_rows());
                    assert!(
                        moved.same_as(f.level(j)),
                        "{name}: restriction to H={h}, k={k}"
                    );
                }
            }
            // a functor vanishing below order k is its own F^k
            let top = f.as_functor(m).unwrap();
            assert!(
                same_levels(&hill_filtration(&top, k), &SubMackey::full(&top)),
                "{name}: F^{k} of F^{k} M is not everything"
            );
            previous = f;
        }
    }
    format!(
        "{} functors, {oracle_checks} levels checked against oracles",
        functors.len()
    )
}

fn check_tower(name: &str, m: &MackeyFunctor, t: &EmTower) {
    let l = m.lattice();
    for h in 0..l.len() {
        let level = m.level(h);
        let mut rank = 0;
        let mut order = big(1);
        for (d, s) in t.slices() {
            let piece = s.functor.level(h);
            rank += piece.free_rank();
            if let Some(o) = piece.order() {
                order *= o;
            }
            let inc = &s.inclusions[h];
            let proj = &s.projections[h];
            assert!(
                inc.kernel().group().is_trivial(),
                "{name} slice {d}: inclusion at H={h}"
            );
            assert!(
                proj.image().is_everything(),
                "{name} slice {d}: projection at H={h}"
            );
            assert!(
                proj.compose(inc).unwrap().is_zero(),
                "{name} slice {d}: composite at H={h}"
            );
            assert!(
                proj.kernel().same_as(&inc.image()),
                "{name} slice {d}: exactness at H={h}"
            );
            assert_eq!(
                invariants(s.stage.level(h)),
                invariants(t.stage(*d).level(h).group()),
                "{name} slice {d}: stage at H={h}"
            );
        }
        assert_eq!(rank, level.free_rank(), "{name}: free rank at H={h}");
        if let Some(o) = level.order() {
            assert_eq!(order, o, "{name}: order at H={h}");
        }
    }
}

fn reconstruction(cases: &[Case]) -> String {
    let mut towers = 0;
    for c in cases {
        let name = format!("{} {}", c.group, c.functor);
        check_tower(&format!("{name} plus"), &c.m, &em_tower_plus(&c.m).unwrap());
        check_tower(
            &format!("{name} minus"),
            &c.m,
            &em_tower_minus(&c.m).unwrap(),
        );
        towers += 2;
    }
    format!("{towers} towers")
}

fn golden_values() -> String {
    let l = lattice("C2");
    let z = invariants(&FgAbGroup::free(1));
    let zero = invariants(&FgAbGroup::zero());
    let z2 = invariants(&FgAbGroup::cyclic(2));
    let summary = |t: &EmTower| -> Vec<(i64, Vec<InvariantFactors>)> {
        t.summary()
            .into_iter()
            .map(|(d, levels)| (d, levels.into_values().collect()))
            .collect()
    };

    let b = em_tower_plus(&preset_mackey(&l, "burnside").unwrap()).unwrap();
    assert_eq!(
        summary(&b),
        vec![
            (1, vec![z.clone(), z.clone()]),
            (2, vec![zero.clone(), z.clone()])
        ]
    );
    let constant = preset_mackey(&l, "constant-Z").unwrap();
    let plus = em_tower_plus(&constant).unwrap();
    assert_eq!(summary(&plus), vec![(1, vec![z.clone(), z.clone()])]);
    let minus = em_tower_minus(&constant).unwrap();
    assert_eq!(
        summary(&minus),
        vec![
            (-2, vec![zero.clone(), z2]),
            (-1, vec![z.clone(), z.clone()])
        ]
    );

    // C4 over C4/C2: the Burnside tower moves to degrees 2 and 4
    let c4 = lattice("C4");
    let q = QuotientMap::new(&c4, 1).unwrap();
    let y = em_tower_plus(&preset_mackey(q.target(), "burnside").unwrap()).unwrap();
    let x = pullback_tower(&y, &q).unwrap();
    assert_eq!(x.slices().keys().copied().collect::<Vec<_>>(), vec![2, 4]);
    "C2 burnside plus, constant-Z plus and minus, C4 pullback".into()
}

fn cell_calculus() -> String {
    let mut cells = 0;
    for &name in GROUPS {
        let l = lattice(name);
        let order = l.group().order() as i64;
        let normals: Vec<QuotientMap> = (0..l.len())
            .filter(|&n| l.is_normal(n))
            .map(|n| QuotientMap::new(&l, n).unwrap())
            .collect();
        for d in -4 * order..=4 * order {
            for c in slice_cells(&l, d, true) {
                cells += 1;
                let dual = cell_dual(&c).unwrap();
                assert_eq!(dual.dimension(), -c.dimension());
                assert_eq!(cell_dual(&dual).unwrap(), c);
                for q in &normals {
                    let image = geometric_fixed_points_cell(&c, q).unwrap();
                    let contains = l.is_subgroup(q.normal(), c.subgroup);
                    match image {
                        Some(i) => {
                            assert!(contains, "{name}: image of a cell not over N");
                            assert_eq!(i.dimension() * q.normal_order() as i64, d, "{name}: {c}");
                            assert_eq!(i.group_order * q.normal_order(), c.group_order);
                        }
                        None => assert!(!contains, "{name}: {c} lost under N={}", q.normal()),
                    }
                }
            }
            for c in slice_cells(&l, d, false).into_iter().filter(|c| !c.regular) {
                assert!(cell_dual(&c).is_err());
            }
        }
    }

    // tightness: the smallest Φ^N-dimension among regular cells of
    // dimension ≥ m concentrated over N
    let c4 = lattice("C4");
    let q = QuotientMap::new(&c4, 1).unwrap();
    for m in -8..=8i64 {
        let best = (0..c4.len())
            .filter(|&h| c4.is_subgroup(1, h))
            .flat_map(|h| (-20..=20).map(move |n| (h, n)))
            .map(|(h, n)| SliceCell::new(&c4, h, n, true))
            .filter(|c| c.dimension() >= m)
            .filter_map(|c| geometric_fixed_points_cell(&c, &q).unwrap())
            .map(|c| c.dimension())
            .min()
            .unwrap();
        assert_eq!(best, pullback_degree(m, 2).unwrap(), "m = {m}");
    }
    format!("{cells} regular cells, C4/C2 tight on [-8, 8]")
}

fn degree_support(cases: &[Case]) -> String {
    for c in cases {
        let order = c.m.group().order() as i64;
        let plus = em_tower_plus(&c.m).unwrap();
        let minus = em_tower_minus(&c.m).unwrap();
        let irregular = irregular_tower_from_regular(&plus).unwrap();
        let name = format!("{} {}", c.group, c.functor);
        assert!(
            plus.slices().keys().all(|d| (1..=order).contains(d)),
            "{name} plus"
        );
        assert!(
            minus.slices().keys().all(|d| (-order..=-1).contains(d)),
            "{name} minus"
        );
        assert!(
            irregular.slices().keys().all(|d| (0..order).contains(d)),
            "{name} irregular"
        );
        // outside the window the stages are constant
        assert!(plus.stage(0).same_as(&SubMackey::full(&c.m)));
        assert!(plus.stage(order + 1).is_zero());
        assert!(minus.stage(-order - 1).same_as(&SubMackey::full(&c.m)));
        assert!(minus.stage(0).is_zero());
    }
    format!("{} functors, three towers each", cases.len())
}

fn consistency(cases: &[Case]) -> String {
    for c in cases {
        let m = &c.m;
        let name = format!("{} {}", c.group, c.functor);
        let l = m.lattice();
        let order = l.group().order() as i64;

        let minus = em_tower_minus(m).unwrap();
        for k in 0..=order + 1 {
            let direct = homotopy_filtration(m, 1, k).unwrap();
            assert!(
                minus.stage(-k).same_as(&direct),
                "{name}: minus stage {}",
                -k
            );
        }

        for h in 0..l.len() {
            let f = hill_filtration(m, l.order(h) as i64);
            assert!(
                reg_coh(m, h).unwrap().same_as(f.level(h)),
                "{name}: reg_coh at H={h}"
            );
        }

        let irregular = irregular_tower_from_regular(&em_tower_plus(m).unwrap()).unwrap();
        for n in -1..=order {
            let upper = hill_filtration(m, n + 1);
            let lower = hill_filtration(m, n + 2);
            let top = upper.as_functor(m).unwrap();
            let direct = quotient_mackey(&top, &lower.relative_to(&upper).unwrap()).unwrap();
            for h in 0..l.len() {
                let computed = irregular
                    .slice(n)
                    .map(|s| invariants(s.functor.level(h)))
                    .unwrap_or_else(|| invariants(&FgAbGroup::zero()));
                assert_eq!(
                    computed,
                    invariants(direct.functor.level(h)),
                    "{name}: irregular slice {n} at H={h}"
                );
            }
        }
    }
    format!("{} functors", cases.len())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["slicekit"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn cli_suite() -> String {
    let dir = tempfile::tempdir().unwrap();
    for &group in GROUPS {
        for &functor in FUNCTORS {
            let (code, first, _) = cli(&["--group", group, "--mackey", functor, "export"]);
            assert_eq!(code, 0, "export {group} {functor}");
            let path = dir
                .path()
                .join(format!("{group}-{}.json", functor.replace('/', "_")));
            std::fs::write(&path, &first).unwrap();
            let (code, second, err) = cli(&["--mackey", path.to_str().unwrap(), "export"]);
            assert_eq!(code, 0, "re-export {group} {functor}: {err}");
            assert_eq!(first, second, "{group} {functor} is not byte-stable");
        }
    }

    let (_, exported, _) = cli(&["--group", "C2", "--mackey", "burnside", "export"]);
    let mut doc: serde_json::Value = serde_json::from_str(&exported).unwrap();
    doc["tr"]["1,0"] = serde_json::json!([[0, 2]]);
    let bad = dir.path().join("corrupted.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let (code, _, err) = cli(&["--mackey", bad.to_str().unwrap(), "check-axioms"]);
    assert_eq!(code, 1, "corrupted functor accepted");
    assert!(
        err.contains("double coset"),
        "no failing identity named: {err}"
    );
    assert!(err.contains("H=1, J=0, K=0"), "no witness: {err}");
    let (code, _, _) = cli(&["--mackey", bad.to_str().unwrap(), "tower"]);
    assert_eq!(code, 1, "tower of a corrupted functor");

    let mut charts = 0;
    for (group, functor, shift) in [
        ("C2", "burnside", "1"),
        ("C4", "constant-Z", "-1"),
        ("S3", "sign", "1"),
    ] {
        let args = [
            "--group", group, "--mackey", functor, "chart", "--shift", shift,
        ];
        let (code, a, _) = cli(&args);
        let (_, b, _) = cli(&args);
        assert_eq!(code, 0);
        assert_eq!(a, b, "chart of {group} {functor} not deterministic");
        assert!(a.starts_with("<?xml") && a.trim_end().ends_with("</svg>"));
        let l = lattice(group);
        let m = preset_mackey(&l, functor).unwrap();
        let t = if shift == "1" {
            em_tower_plus(&m)
        } else {
            em_tower_minus(&m)
        }
        .unwrap();
        for d in t.slices().keys() {
            assert!(
                a.contains(&format!("data-degree=\"{d}\"")),
                "column {d} missing"
            );
        }
        assert_eq!(a.matches("class=\"slice\"").count(), t.slices().len());
        charts += 1;
    }
    format!(
        "{} round trips, corrupted functor rejected, {charts} charts",
        GROUPS.len() * FUNCTORS.len()
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases = cases();
    let results = [
        run("1 mackey axioms", || mackey_axioms(&cases)),
        run("2 hill filtration", || hill_suite(&cases)),
        run("3 tower reconstruction", || reconstruction(&cases)),
        run("4 golden values", golden_values),
        run("5 cell calculus", cell_calculus),
        run("6 degree support", || degree_support(&cases)),
        run("7 consistency", || consistency(&cases)),
        run("8 cli", cli_suite),
    ];
    let elapsed = start.elapsed();
    let passed = results.iter().filter(|&&ok| ok).count();
    println!(
        "{passed}/{} criteria passed in {elapsed:.2?}",
        results.len()
    );
    let in_time = elapsed.as_secs() < 60;
    if !in_time {
        println!("FAIL  time budget: {elapsed:.2?} exceeds 60 s");
    }
    if passed == results.len() && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
