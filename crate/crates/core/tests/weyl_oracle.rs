//! Weyl groups and orbits checked against exhaustive enumeration of signed
//! permutations.

use std::collections::HashSet;

use gbcheck_core::report::{sample_points, small_root_systems};
use gbcheck_core::weyl::{RootSystem, Series, TorusPoint, WeylElement};
use itertools::Itertools;

/// Every signed permutation of `n` letters that belongs to the Weyl group of
/// `rs`, selected by the classical membership rule rather than by generators.
fn brute_force_group(rs: &RootSystem) -> HashSet<WeylElement> {
    let n = rs.coordinate_count();
    let mut out = HashSet::new();
    for perm in (0..n).permutations(n) {
        for mask in 0u32..(1 << n) {
            let signs: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let negatives = mask.count_ones() as usize;
            let identity_perm = perm.iter().enumerate().all(|(i, &p)| i == p);
            let member = match rs.series() {
                Series::A if rs.coordinate_count() == rs.rank() => identity_perm,
                Series::A => negatives == 0,
                Series::B | Series::C => true,
                Series::D => negatives.is_multiple_of(2),
                Series::Torus => identity_perm && negatives == 0,
            };
            if member {
                out.insert(WeylElement::new(perm.clone(), signs).unwrap());
            }
        }
    }
    out
}

fn brute_force_orbit(group: &HashSet<WeylElement>, t: &TorusPoint) -> HashSet<TorusPoint> {
    group.iter().map(|w| w.act(t).unwrap()).collect()
}

#[test]
fn generated_group_equals_membership_rule() {
    for rs in small_root_systems() {
        let generated: HashSet<WeylElement> = rs.weyl_group().unwrap().into_iter().collect();
        let brute = brute_force_group(&rs);
        assert_eq!(generated, brute, "{:?} {}", rs.series(), rs.rank());
        assert_eq!(brute.len() as u64, rs.classical_order());
    }
}

#[test]
fn group_axioms_hold() {
    for rs in small_root_systems() {
        let elements = rs.weyl_group().unwrap();
        let set: HashSet<&WeylElement> = elements.iter().collect();
        let e = WeylElement::identity(rs.coordinate_count());
        assert!(set.contains(&e));
        for a in &elements {
            assert!(set.contains(&a.inverse()));
            assert!(a.compose(&a.inverse()).is_identity());
            for b in elements.iter().take(8) {
                assert!(set.contains(&a.compose(b)));
                for c in elements.iter().take(4) {
                    assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
                }
            }
        }
    }
}

#[test]
fn action_is_a_homomorphism() {
    for rs in small_root_systems() {
        let elements = rs.weyl_group().unwrap();
        for t in sample_points(rs.coordinate_count()) {
            for a in elements.iter().take(6) {
                for b in elements.iter().rev().take(6) {
                    let lhs = a.compose(b).act(&t).unwrap();
                    let rhs = a.act(&b.act(&t).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn orbit_stabilizer_against_enumeration() {
    for rs in small_root_systems() {
        let group = brute_force_group(&rs);
        let points = sample_points(rs.coordinate_count());
        assert!(points.len() >= 10);
        for t in points {
            let orbit = brute_force_orbit(&group, &t);
            let stab = group.iter().filter(|w| w.act(&t).unwrap() == t).count();
            let summary = rs.orbit_summary(&t).unwrap();
            assert_eq!(summary.orbit_size as usize, orbit.len(), "{t}");
            assert_eq!(summary.stabilizer_order as usize, stab, "{t}");
            assert_eq!(group.len() / stab, orbit.len());
            let listed: HashSet<TorusPoint> = rs.orbit(&t).unwrap().into_iter().collect();
            assert_eq!(listed, orbit);
        }
    }
}

#[test]
fn spec_orbit_examples() {
    use gbcheck_core::weyl::Realization;
    let a1 = RootSystem::build(Series::A, 1, Some(Realization::Sl)).unwrap();
    assert_eq!(
        a1.orbit_euler_characteristic(&"g1".parse().unwrap())
            .unwrap(),
        2
    );
    assert_eq!(
        a1.orbit_euler_characteristic(&"1".parse().unwrap())
            .unwrap(),
        1
    );
    let a2 = RootSystem::build(Series::A, 2, Some(Realization::Gl)).unwrap();
    assert_eq!(
        a2.orbit_euler_characteristic(&"g1,g1,g2".parse().unwrap())
            .unwrap(),
        3
    );
    let b2 = RootSystem::build(Series::B, 2, None).unwrap();
    assert_eq!(
        b2.orbit_euler_characteristic(&"g1,g2".parse().unwrap())
            .unwrap(),
        8
    );
    let d3 = RootSystem::build(Series::D, 3, None).unwrap();
    assert_eq!(d3.weyl_group().unwrap().len(), 24);
}
