//! Cross-validation of the configuration-space testbed against its
//! independent oracles, and of the degree detectors against the behavior
//! a module restricted from based injections must show: local degree -1,
//! generation degree equal to the stable degree, surjectivity of the
//! natural map above twice the cohomological degree.

use fistab::bounds::config_space_rule;
use fistab::characters::{induce, ClassFunction};
use fistab::conf::{build_conf_module, character_oracle, dimension_oracle};
use fistab::fimod::Flag;
use fistab::linalg;
use fistab::partitions::{partitions, Partition};
use fistab::rational::rat_i64;
use fistab::repstab::{decompose, stabilization_onset};

#[test]
fn dimensions_match_the_poincare_product_up_to_degree_three() {
    for k in 0..=3u32 {
        let module = build_conf_module(k, 8).unwrap();
        for n in 0..=8u32 {
            assert_eq!(
                module.dim(n) as u64,
                dimension_oracle(k, n),
                "k = {k}, n = {n}"
            );
        }
    }
}

#[test]
fn engine_characters_match_the_relabeling_oracle() {
    // trace of word-products of generator matrices vs direct relabeling
    for k in 0..=2u32 {
        let module = build_conf_module(k, 7).unwrap();
        for n in 0..=7u32 {
            let chi = module.character(n);
            for t in partitions(n) {
                assert_eq!(
                    *chi.value_at(&t),
                    rat_i64(character_oracle(k, n, &t).unwrap()),
                    "k = {k}, n = {n}, type {t}"
                );
            }
        }
    }
}

#[test]
fn natural_map_surjective_above_twice_the_degree() {
    for k in 0..=2u32 {
        let module = build_conf_module(k, 7).unwrap();
        for n in 1..=7u32 {
            let nat = module.natural_map(n);
            let surjective = linalg::rank(&nat) == module.dim(n);
            assert_eq!(
                surjective,
                n as i64 > 2 * k as i64 || module.dim(n) == 0,
                "k = {k}, n = {n}"
            );
        }
    }
}

#[test]
fn degree_one_examples() {
    let module = build_conf_module(1, 7).unwrap();
    // generator sits in level 2 and is fixed by the S_2 action
    let (h0_dim, h0_char) = module.fi_homology_zero(2);
    assert_eq!(h0_dim, 1);
    assert!(h0_char.values().iter().all(|v| *v == rat_i64(1)));
    assert_eq!(module.fi_homology_zero(3).0, 0);
    // rank accounting at level 4: kernel of the natural map is 12 - 6 = 6
    // and is exactly the image of d1 - d2
    let nat = module.natural_map(4);
    assert_eq!((nat.nrows(), nat.ncols()), (6, 12));
    assert_eq!(linalg::rank(&nat), 6);
    let (d1, d2) = module.two_natural_maps(4);
    let diff = d1.sub(&d2);
    assert_eq!(linalg::rank(&diff), 6);
    // level 2: not surjective, the generator is new
    assert_eq!(linalg::rank(&module.natural_map(2)), 0);
}

#[test]
fn observed_degrees_show_induced_behavior() {
    for (k, max_level) in [(0u32, 6u32), (1, 7), (2, 8)] {
        let module = build_conf_module(k, max_level).unwrap();
        let report = module.observed_degrees().unwrap();
        assert_eq!(report.delta, 2 * k as i64, "k = {k}");
        assert_eq!(report.hmax, -1, "k = {k}");
        assert_eq!(report.t0, report.delta, "k = {k}");
        assert!(report.t1 <= 2 * k as i64, "k = {k}");
        assert_eq!(report.delta_flag, Flag::CertifiedAtTruncation);
        assert_eq!(report.window.0, 0, "polynomial from level 0, k = {k}");
    }
    // degree three: stable degree 6 observed at the cap
    let module = build_conf_module(3, 8).unwrap();
    let report = module.observed_degrees().unwrap();
    assert_eq!(report.delta, 6);
    assert_eq!(report.hmax, -1);
    assert_eq!(report.t0, 6);
    assert!(report.t1 <= 6);
}

#[test]
fn shift_is_injective_on_the_testbed() {
    // modules restricted from based injections are torsion-free, so every
    // iota is injective
    for k in 0..=2u32 {
        let module = build_conf_module(k, 6).unwrap();
        let shifted = module.shift().unwrap();
        for n in 0..=5u32 {
            let iota = &shifted.iota[n as usize];
            assert_eq!(
                linalg::rank(iota),
                module.dim(n),
                "iota injective at n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn derivative_dimension_chain_of_degree_one() {
    // dims n(n-1)/2 differentiate to n, then 1, then 0
    let module = build_conf_module(1, 7).unwrap();
    let d1 = module.derivative().unwrap();
    let expected: Vec<usize> = (1..=7).map(|n| n - 1).collect();
    assert_eq!(d1.dims(), expected);
    let d2 = d1.derivative().unwrap();
    assert_eq!(d2.dims(), vec![1, 1, 1, 1, 1, 1]);
    let d3 = d2.derivative().unwrap();
    assert!(d3.is_zero());
}

#[test]
fn induced_characters_agree_with_symmetric_core_on_the_testbed() {
    let module = build_conf_module(1, 6).unwrap();
    for (p, n) in [(1u32, 4u32), (1, 5), (2, 5), (1, 6), (2, 6)] {
        let ind = module.induced_level(p, n);
        assert_eq!(
            ind.dim() as u64,
            fistab::fimod::injection_count(p, n) * module.dim(n - p) as u64
        );
        let mut expected = module.character(n - p);
        for _ in 0..p {
            expected = induce(&expected);
        }
        assert_eq!(ind.character(), expected, "p = {p}, n = {n}");
    }
}

#[test]
fn observed_degrees_dominated_by_the_planar_bounds() {
    // the planar orientable configuration-space bounds dominate every
    // observed quantity of the testbed
    let bounds = config_space_rule(2, true).unwrap();
    for k in 0..=2u32 {
        let module = build_conf_module(k, 7).unwrap();
        let report = module.observed_degrees().unwrap();
        let q = k as i64;
        assert!(report.delta <= bounds.profile.delta.eval_i64(q));
        assert!(report.hmax <= bounds.profile.hmax.eval_i64(q));
        assert!(report.t0 <= bounds.t0.eval_i64(q));
        assert!(report.t1 <= bounds.t1.eval_i64(q));
    }
}

#[test]
fn degree_two_multiplicities_stabilize_within_four_times_the_degree() {
    // characters via the independent relabeling oracle, so the multiplicity
    // table does not depend on the engine's generator matrices
    let oracle_chars: Vec<ClassFunction> = (0..=8u32)
        .map(|n| ClassFunction::from_fn(n, |t| rat_i64(character_oracle(2, n, t).unwrap())))
        .collect();
    let table = decompose(&oracle_chars).unwrap();

    // the engine route must produce the same table
    let module = build_conf_module(2, 8).unwrap();
    let engine_chars: Vec<ClassFunction> = (0..=8).map(|n| module.character(n)).collect();
    assert_eq!(decompose(&engine_chars).unwrap(), table);

    let (onset, flag) = stabilization_onset(&table);
    assert_eq!(onset, 7, "multiplicities constant from level 7 through 8");
    assert!(onset <= 8, "within 4k = 8");
    assert_eq!(flag, Flag::CertifiedAtTruncation);
    // frozen stable tail: no trivial summand in degree two
    let tail = table.at_level(8);
    let expect = |parts: &[u32]| Partition::new(parts.to_vec()).unwrap();
    assert_eq!(tail.get(&Partition::empty()), None);
    assert_eq!(tail.get(&expect(&[1])), Some(&2));
    assert_eq!(tail.get(&expect(&[1, 1])), Some(&2));
    assert_eq!(tail.get(&expect(&[2])), Some(&2));
    assert_eq!(tail.get(&expect(&[2, 1])), Some(&2));
    assert_eq!(tail.get(&expect(&[3])), Some(&1));
    assert_eq!(tail.get(&expect(&[3, 1])), Some(&1));
    assert_eq!(tail.len(), 6);
}

#[test]
fn natural_and_two_step_maps_are_equivariant_on_the_testbed() {
    let module = build_conf_module(1, 5).unwrap();
    for n in 2..=5u32 {
        let nat = module.natural_map(n);
        let ind1 = module.induced_level(1, n);
        let ind2 = module.induced_level(2, n);
        for (i, g) in module.gens(n).iter().enumerate() {
            assert_eq!(
                g.mul(&nat),
                nat.mul(&ind1.gens()[i]),
                "n = {n}, s_{}",
                i + 1
            );
        }
        let (d1, d2) = module.two_natural_maps(n);
        for i in 0..(n as usize - 1) {
            assert_eq!(d1.mul(&ind2.gens()[i]), ind1.gens()[i].mul(&d1));
            assert_eq!(d2.mul(&ind2.gens()[i]), ind1.gens()[i].mul(&d2));
        }
        assert!(nat.mul(&d1.sub(&d2)).is_zero());
    }
}
