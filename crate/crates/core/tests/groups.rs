use std::collections::BTreeSet;

use slicekit::group::{named_group, PermGroup, SubgroupLattice, PRESET_NAMES};

/// Every subgroup, found by testing each subset of elements for closure.
fn brute_force_subgroups(g: &PermGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16, "subset scan is exponential");
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| mask & (1 << g.mul(a, b)) != 0));
        if closed {
            found.insert(set);
        }
    }
    found
}

fn conjugacy_class_count(l: &SubgroupLattice) -> usize {
    let g = l.group();
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for h in 0..l.len() {
        if seen.contains(&h) {
            continue;
        }
        classes += 1;
        for x in 0..g.order() {
            let conj: Vec<usize> = {
                let mut v: Vec<usize> = l
                    .subgroup(h)
                    .elements()
                    .iter()
                    .map(|&y| g.mul(g.mul(x, y), g.inv(x)))
                    .collect();
                v.sort_unstable();
                v
            };
            let id = (0..l.len()).find(|&k| l.subgroup(k).elements() == conj.as_slice());
            seen.insert(id.expect("conjugate is a subgroup"));
        }
    }
    classes
}

#[test]
fn lattices_match_subset_scan() {
    for name in PRESET_NAMES {
        let g = named_group(name).unwrap();
        let l = SubgroupLattice::new(g.clone());
        let listed: BTreeSet<Vec<usize>> = l
            .subgroups()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(listed.len(), l.len(), "{name}: duplicates");
        assert_eq!(listed, brute_force_subgroups(&g), "{name}");
        assert_eq!(l.classes().len(), conjugacy_class_count(&l), "{name}");
        assert_eq!(l.order(l.trivial()), 1);
        assert_eq!(l.order(l.top()), g.order());
    }
}

#[test]
fn named_lattice_shapes() {
    let s3 = SubgroupLattice::new(named_group("S3").unwrap());
    assert_eq!((s3.len(), s3.classes().len()), (6, 4));

    let v4 = SubgroupLattice::new(named_group("V4").unwrap());
    assert_eq!(v4.len(), 5);
    assert!((0..v4.len()).all(|h| v4.is_normal(h)));
    assert_eq!((0..v4.len()).filter(|&h| v4.order(h) == 2).count(), 3);

    let q8 = SubgroupLattice::new(named_group("Q8").unwrap());
    assert_eq!((0..q8.len()).filter(|&h| q8.order(h) == 2).count(), 1);
    assert_eq!(q8.group().order(), 8);

    assert_eq!(SubgroupLattice::new(named_group("C2").unwrap()).len(), 2);
    assert!(named_group("C5").is_err());
}

#[test]
fn orbit_counting_over_classes() {
    // Σ over classes of [G : N_G(H)] counts every subgroup once.
    for name in PRESET_NAMES {
        let g = named_group(name).unwrap();
        let l = SubgroupLattice::new(g.clone());
        let total: usize = l
            .class_reps()
            .into_iter()
            .map(|h| g.order() / g.normalizer(l.subgroup(h)).order())
            .sum();
        assert_eq!(total, l.len(), "{name}");
    }
}

#[test]
fn double_cosets_partition_h() {
    for name in PRESET_NAMES {
        let l = SubgroupLattice::new(named_group(name).unwrap());
        let g = l.group();
        for h in 0..l.len() {
            let subs = l.subgroups_of(h);
            for &j in &subs {
                for &k in &subs {
                    let reps = l.double_cosets(h, j, k).unwrap();
                    let sizes: usize = reps.iter().map(|d| d.size).sum();
                    assert_eq!(sizes, l.order(h), "{name} H={h} J={j} K={k}");
                    // the sets J g K are disjoint
                    let mut covered = BTreeSet::new();
                    for d in &reps {
                        for &a in l.subgroup(j).elements() {
                            for &b in l.subgroup(k).elements() {
                                covered.insert(g.mul(g.mul(a, d.representative), b));
                            }
                        }
                    }
                    assert_eq!(covered.len(), l.order(h));
                }
            }
        }
    }
}

#[test]
fn s3_double_cosets_of_a_transposition() {
    let l = SubgroupLattice::new(named_group("S3").unwrap());
    let t = (0..l.len()).find(|&h| l.order(h) == 2).unwrap();
    let mut sizes: Vec<usize> = l
        .double_cosets(l.top(), t, t)
        .unwrap()
        .iter()
        .map(|d| d.size)
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 4]);

    let c2 = SubgroupLattice::new(named_group("C2").unwrap());
    assert_eq!(c2.double_cosets(1, 0, 0).unwrap().len(), 2);
    assert_eq!(c2.double_cosets(1, 1, 1).unwrap().len(), 1);
    assert!(c2.double_cosets(0, 1, 0).is_err());
}

#[test]
fn quotient_by_the_trivial_subgroup_is_the_regular_action() {
    for name in PRESET_NAMES {
        let g = named_group(name).unwrap();
        let q = g.quotient_group(&g.trivial_subgroup()).unwrap();
        assert_eq!(q.group.order(), g.order());
        assert_eq!(q.group.degree(), g.order());
        // left translation is fixed-point free away from the identity
        let mut cycle_types: Vec<Vec<usize>> =
            q.group.elements().iter().map(|p| p.cycle_type()).collect();
        cycle_types.sort();
        let mut expected: Vec<Vec<usize>> = g
            .elements()
            .iter()
            .enumerate()
            .map(|(x, _)| {
                let mut order = 1;
                let mut y = x;
                while y != g.identity() {
                    y = g.mul(x, y);
                    order += 1;
                }
                vec![order; g.order() / order]
            })
            .collect();
        expected.sort();
        assert_eq!(cycle_types, expected, "{name}");
    }
}

#[test]
fn quotient_and_weyl_orders() {
    let c4 = named_group("C4").unwrap();
    let l = SubgroupLattice::new(c4.clone());
    assert_eq!(c4.quotient_group(l.subgroup(1)).unwrap().group.order(), 2);
    assert_eq!(
        c4.quotient_group(l.subgroup(l.top()))
            .unwrap()
            .group
            .order(),
        1
    );

    let s3 = named_group("S3").unwrap();
    let l = SubgroupLattice::new(s3.clone());
    let c3 = (0..l.len()).find(|&h| l.order(h) == 3).unwrap();
    let t = (0..l.len()).find(|&h| l.order(h) == 2).unwrap();
    assert_eq!(s3.quotient_group(l.subgroup(c3)).unwrap().group.order(), 2);
    assert!(s3.quotient_group(l.subgroup(t)).is_err());
    assert_eq!(l.weyl_group(t).group.order(), 1);
    assert_eq!(l.weyl_group(0).group.order(), 6);
    assert_eq!(l.weyl_group(l.top()).group.order(), 1);
}

#[test]
fn families_not_containing_n() {
    let c4 = SubgroupLattice::new(named_group("C4").unwrap());
    assert_eq!(c4.family_not_containing(1).family, vec![0]);
    let c2 = SubgroupLattice::new(named_group("C2").unwrap());
    assert_eq!(c2.family_not_containing(1).family, vec![0]);
    assert!(c2.family_not_containing(0).family.is_empty());
}
