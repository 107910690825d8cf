//! Randomized invariants, each checked exactly against an independent
//! construction.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use zonocalc::discrete::{
    brute_force_partition, certifying_grid, d_space_basis, dm_interpolate, is_annihilated,
    partition_function, LatticeFunction,
};
use zonocalc::exactnum::euler_phi;
use zonocalc::geometry::{
    alcoves, alcoves_at_origin, base_alcove, delta_set, delta_set_at, lattice_box, polytope_volume,
    zonotope, Window,
};
use zonocalc::inversion::{brion_vergne_partition, invert_general, invert_unimodular};
use zonocalc::lattice::{cocircuits, enumerate_bases, fixed_sublist, toric_vertices};
use zonocalc::piecewise::{
    build_box, build_spline, semidiscrete_convolve, OperatorSeries, PartKind,
};
use zonocalc::poly::MultiPoly;
use zonocalc::{Cyclo, Rat, ToricVertex, WeightList};

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rat::new(p, q))
}

fn cyclo_pair() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
    (1u64..=12).prop_flat_map(|n| {
        let d = euler_phi(n) as usize;
        let c = || prop::collection::vec(rat(), d).prop_map(move |v| Cyclo::from_coeffs(n, v));
        (c(), c(), c())
    })
}

/// Spanning lists of 2..=4 nonzero vectors in Z² with entries in [−2, 2].
fn planar_list() -> impl Strategy<Value = WeightList> {
    prop::collection::vec((-2i64..=2, -2i64..=2), 2..=4).prop_filter_map("spanning, nonzero", |v| {
        if v.iter().any(|&(a, b)| a == 0 && b == 0) {
            return None;
        }
        let x = WeightList::new(2, v.into_iter().map(|(a, b)| vec![a, b]).collect()).ok()?;
        x.spans().then_some(x)
    })
}

/// Pointed planar lists with weights in the closed positive quadrant.
fn positive_planar_list(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightList> {
    prop::collection::vec((0i64..=2, 0i64..=2), len).prop_filter_map("spanning, nonzero", |v| {
        if v.iter().any(|&(a, b)| a == 0 && b == 0) {
            return None;
        }
        let x = WeightList::new(2, v.into_iter().map(|(a, b)| vec![a, b]).collect()).ok()?;
        x.spans().then_some(x)
    })
}

fn scalar_list(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = WeightList> {
    prop::collection::vec(1i64..=3, len).prop_map(|v| WeightList::scalars(&v).unwrap())
}

fn finite_k(dim: usize, radius: i64) -> impl Strategy<Value = LatticeFunction> {
    let pts = lattice_box(&vec![(-radius, radius); dim]);
    prop::collection::vec(-4i64..=4, pts.len()).prop_map(move |vals| {
        LatticeFunction::finite_rat(
            dim,
            pts.iter()
                .zip(vals)
                .filter(|(_, v)| *v != 0)
                .map(|(p, v)| (p.clone(), Rat::from_int(v))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rat_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rat::one());
        }
    }

    #[test]
    fn cyclo_field_axioms((a, b, c) in cyclo_pair()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero elements are invertible");
            prop_assert_eq!(a.mul(&inv), Cyclo::from_rat(Rat::one()).embed(a.order()).unwrap());
        }
    }

    #[test]
    fn root_power_has_order_dividing_n(n in 1u64..=24, k in -30i64..=30) {
        let z = Cyclo::root_power(n, k);
        prop_assert_eq!(z.pow(n as u32).to_rational().unwrap(), Rat::one());
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _) in cyclo_pair(), m in 1u64..=3, r in rat()) {
        let big = a.order() * m;
        let ea = a.embed(big).unwrap();
        let eb = b.embed(big).unwrap();
        prop_assert_eq!(a.mul(&b).embed(big).unwrap(), ea.mul(&eb));
        prop_assert_eq!(a.add(&b).embed(big).unwrap(), ea.add(&eb));
        let er = Cyclo::from_rat(r.clone()).embed(big).unwrap();
        prop_assert_eq!(er.to_rational().unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cocircuits_are_minimal_non_spanning_complements(x in planar_list()) {
        for y in cocircuits(&x).unwrap() {
            let rest = x.complement(&y);
            prop_assert!(x.rank_of(&rest) < x.dim());
            for &i in &y {
                let mut with = rest.clone();
                with.push(i);
                prop_assert_eq!(x.rank_of(&with), x.dim());
            }
        }
    }

    #[test]
    fn toric_vertices_match_brute_force(x in planar_list()) {
        let vs = toric_vertices(&x).unwrap();
        let set: BTreeSet<ToricVertex> = vs.iter().cloned().collect();
        for g in &vs {
            prop_assert!(set.contains(&g.inverse()));
            prop_assert_eq!(x.rank_of(&fixed_sublist(&x, g)), x.dim());
        }
        // every torsion point of a spanning fixed sublist has denominator
        // dividing the lcm of the basis determinants
        let d = enumerate_bases(&x)
            .iter()
            .fold(1i64, |l, (_, det)| num_integer::lcm(l, det.abs()));
        let mut brute = BTreeSet::new();
        for m in lattice_box(&[(0, d - 1), (0, d - 1)]) {
            let g = ToricVertex::new(m.iter().map(|&k| Rat::new(k, d)).collect());
            if x.rank_of(&fixed_sublist(&x, &g)) == x.dim() {
                brute.insert(g);
            }
        }
        prop_assert_eq!(set, brute);
    }

    #[test]
    fn delta_set_is_independent_of_the_interior_point(x in planar_list()) {
        let total: i64 = enumerate_bases(&x).iter().map(|(_, d)| d.abs()).sum();
        for c in alcoves_at_origin(&x).unwrap() {
            let reference = delta_set(&c, &x);
            prop_assert_eq!(reference.len() as i64, total);
            for v in &c.vertices {
                let p: Vec<Rat> = c
                    .interior
                    .iter()
                    .zip(v)
                    .map(|(a, b)| &(&(a * &Rat::from_int(3)) + b) / &Rat::from_int(4))
                    .collect();
                prop_assert_eq!(&delta_set_at(&p, &x), &reference);
            }
        }
        prop_assert_eq!(polytope_volume(&zonotope(&x)).unwrap(), Rat::from_int(total));
    }

    #[test]
    fn alcoves_tile_the_window(x in planar_list(), lo in (-2i64..=0, -2i64..=0), ext in (1i64..=2, 1i64..=2)) {
        let w = Window::from_ints(&[lo.0, lo.1], &[lo.0 + ext.0, lo.1 + ext.1]).unwrap();
        let cells = alcoves(&x, &w).unwrap();
        let total: Rat = cells.iter().map(|c| c.volume()).sum();
        prop_assert_eq!(total, w.volume());
        let keys: BTreeSet<&Vec<i64>> = cells.iter().map(|c| &c.key).collect();
        prop_assert_eq!(keys.len(), cells.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivative_of_cone_spline_drops_a_ray(y in positive_planar_list(3..=4), pick in 0usize..4) {
        let i = pick % y.len();
        let rest = y.complement(&[i]);
        prop_assume!(y.rank_of(&rest) == 2);
        let w = Window::from_ints(&[-1, -1], &[3, 3]).unwrap();
        let rays = |x: &WeightList| -> Vec<(Vec<i64>, PartKind)> {
            x.weights().iter().map(|a| (a.clone(), PartKind::Ray)).collect()
        };
        let t = build_spline(&rays(&y), &w).unwrap();
        let t_rest = build_spline(&rays(&y.sublist(&rest)), &w).unwrap();
        prop_assert!(t.partial_pw(y.get(i)).equal_on_window(&t_rest));
    }

    #[test]
    fn todd_and_cube_average_are_inverse(
        y in planar_list(),
        coeffs in prop::collection::vec(-5i64..=5, 10),
    ) {
        let mut exps = Vec::new();
        for d in 0..=3u32 {
            for i in 0..=d {
                exps.push(vec![i, d - i]);
            }
        }
        let p = MultiPoly::from_terms(2, exps.into_iter().zip(coeffs).map(|(e, c)| (e, Rat::from_int(c))));
        let margin = 3;
        let both = OperatorSeries::todd(&y)
            .then(OperatorSeries::cube_average(&y))
            .with_truncation(y.len() + margin);
        prop_assert_eq!(both.apply(&p).unwrap(), p.clone());
        let reversed = OperatorSeries::cube_average(&y)
            .then(OperatorSeries::todd(&y))
            .with_truncation(y.len() + margin);
        prop_assert_eq!(reversed.apply(&p).unwrap(), p);
    }

    #[test]
    fn lim_commutes_with_lattice_translation(
        x in scalar_list(1..=3),
        mu in -2i64..=2,
        lambda in -3i64..=3,
    ) {
        let w = Window::from_ints(&[-6], &[9]).unwrap();
        let b = build_box(&x, &w).unwrap();
        let moved = b.translate(&[mu]);
        for c in alcoves_at_origin(&x).unwrap() {
            prop_assert_eq!(moved.lim(&c, &[lambda + mu]).unwrap(), b.lim(&c, &[lambda]).unwrap());
        }
    }

    #[test]
    fn nabla_of_partition_function_drops_weights(y in positive_planar_list(3..=4), pick in 0usize..4) {
        let i = pick % y.len();
        let rest = y.complement(&[i]);
        prop_assume!(y.rank_of(&rest) == 2);
        let p = partition_function(&y).unwrap();
        let lhs = p.nabla(y.get(i));
        let rhs = partition_function(&y.sublist(&rest)).unwrap();
        let pts = lattice_box(&[(-2, 5), (-2, 5)]);
        prop_assert!(lhs.agrees_on(&rhs, &pts).unwrap());
        let full = p.nabla_all(y.weights());
        prop_assert!(full.agrees_on(&LatticeFunction::delta0(2), &pts).unwrap());
    }

    #[test]
    fn box_convolution_of_d_space_element_is_cube_average(
        which in 0usize..4,
        coeffs in prop::collection::vec(-3i64..=3, 8),
    ) {
        let x = [
            WeightList::scalars(&[1, 1]).unwrap(),
            WeightList::scalars(&[1, 1, 1]).unwrap(),
            WeightList::scalars(&[1, 2]).unwrap(),
            WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap(),
        ][which]
            .clone();
        let basis = d_space_basis(&x).unwrap();
        let mut k = MultiPoly::zero(x.dim());
        for (b, c) in basis.iter().zip(&coeffs) {
            k.add_scaled(b, &Rat::from_int(*c));
        }
        let f = LatticeFunction::quasi_poly(x.dim(), vec![(ToricVertex::identity(x.dim()), k.to_cyclo())]);
        let b = build_box(&x, &zonocalc::geometry::zonotope_window(&x)).unwrap();
        let w = Window::cube(-1, 2, x.dim()).unwrap();
        let conv: zonocalc::piecewise::PiecewisePoly<Rat> = semidiscrete_convolve(&b, &f, &w).unwrap();
        let expected = OperatorSeries::cube_average(&x).apply(&k).unwrap();
        for (_, piece) in conv.pieces() {
            prop_assert_eq!(piece, &expected);
        }
    }

    #[test]
    fn dm_interpolation_is_alcove_independent(
        which in 0usize..3,
        vals in prop::collection::vec(-4i64..=4, 8),
    ) {
        let x = [
            WeightList::scalars(&[1, 1]).unwrap(),
            WeightList::scalars(&[2]).unwrap(),
            WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap(),
        ][which]
            .clone();
        let c = base_alcove(&x, true).unwrap();
        let pts = delta_set(&c, &x);
        let data: BTreeMap<Vec<i64>, Cyclo> = pts
            .iter()
            .zip(&vals)
            .map(|(p, &v)| (p.clone(), Cyclo::from_rat(Rat::from_int(v))))
            .collect();
        let k = dm_interpolate(&x, &c, &data).unwrap();
        for p in &pts {
            prop_assert_eq!(k.eval(p).to_rational().unwrap(), data[p].to_rational().unwrap());
        }
        let kf = k.to_function(x.dim());
        prop_assert!(is_annihilated(&x, &kf, &certifying_grid(&x, 2)).unwrap());
        for other in alcoves_at_origin(&x).unwrap() {
            let again: BTreeMap<Vec<i64>, Cyclo> =
                delta_set(&other, &x).into_iter().map(|p| { let v = k.eval(&p); (p, v) }).collect();
            let k2 = dm_interpolate(&x, &other, &again).unwrap();
            let grid = lattice_box(&vec![(-4, 4); x.dim()]);
            prop_assert!(k2.to_function(x.dim()).agrees_on(&kf, &grid).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unimodular_inversion_is_linear_and_equivariant(
        k1 in finite_k(1, 3),
        k2 in finite_k(1, 3),
        mu in -2i64..=2,
    ) {
        let x = WeightList::scalars(&[1, 1]).unwrap();
        let bx = [(-6, 6)];
        let r1 = invert_unimodular(&x, &k1, &bx).unwrap();
        let r2 = invert_unimodular(&x, &k2, &bx).unwrap();
        let rs = invert_unimodular(&x, &k1.add(&k2), &bx).unwrap();
        prop_assert!(r1.verdict && r2.verdict && rs.verdict);
        let pts = lattice_box(&bx);
        prop_assert!(rs.reconstructed.agrees_on(&r1.reconstructed.add(&r2.reconstructed), &pts).unwrap());
        let rt = invert_unimodular(&x, &k1.translate(&[mu]), &bx).unwrap();
        let inner = lattice_box(&[(-3, 3)]);
        prop_assert!(rt.reconstructed.agrees_on(&r1.reconstructed.translate(&[mu]), &inner).unwrap());
    }

    #[test]
    fn unimodular_and_general_inversion_agree(k in finite_k(2, 1)) {
        let x = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let bx = [(-2, 2), (-2, 2)];
        let u = invert_unimodular(&x, &k, &bx).unwrap();
        let g = invert_general(&x, &k, &bx).unwrap();
        prop_assert!(u.verdict && g.verdict);
        prop_assert!(u.reconstructed.agrees_on(&g.reconstructed, &lattice_box(&bx)).unwrap());
    }

    #[test]
    fn general_inversion_on_scalar_lists(x in scalar_list(1..=2), k in finite_k(1, 2)) {
        let r = invert_general(&x, &k, &[(-4, 4)]).unwrap();
        prop_assert!(r.verdict);
        for p in &r.points {
            prop_assert!(r.reconstructed.eval_rat(p).unwrap().is_integer());
        }
    }

    #[test]
    fn brion_vergne_counts_lattice_points(x in scalar_list(1..=3)) {
        let lo = -2i64;
        let hi = 9i64;
        let (p, report) = brion_vergne_partition(&x, &[(lo, hi)]).unwrap();
        prop_assert!(report.verdict);
        for l in lo..=hi {
            let v = p.eval_rat(&[l]).unwrap();
            prop_assert!(v.is_integer() && !v.is_negative());
            prop_assert_eq!(v, Rat::from_int(brute_force_partition(&x, &[l]).unwrap() as i64));
        }
        let total: i64 = x.total()[0];
        let image = p.nabla_all(x.weights());
        for l in lo + total..=hi {
            let expected = if l == 0 { Rat::one() } else { Rat::zero() };
            prop_assert_eq!(image.eval_rat(&[l]).unwrap(), expected);
        }
    }
}
