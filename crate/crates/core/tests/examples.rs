//! Worked examples for splines, lattice functions and the inversion
//! formulas, each with a hand-derived expected value.

use std::collections::BTreeMap;

use zonocalc::discrete::{
    d_space_basis, dm_interpolate, dm_space_basis, partition_function, polarized_partition,
    LatticeFunction, RegularFace,
};
use zonocalc::geometry::{
    alcoves_at_origin, lattice_box, spline_point_oracle, zonotope_window, Cell, SplineKind, Window,
};
use zonocalc::inversion::{
    atiyah_index_forms, brion_vergne_partition, general_index_reconstruction, invert_general,
    invert_unimodular, omega_g, verify_box_index,
};
use zonocalc::piecewise::{
    build_box, build_spline, build_t_polarized, lim_alcove, semidiscrete_convolve, OperatorSeries,
    PartKind, PiecewisePoly,
};
use zonocalc::poly::MultiPoly;
use zonocalc::{Cyclo, Rat, ToricVertex, WeightList};

fn r(p: i64, q: i64) -> Vec<Rat> {
    vec![Rat::new(p, q)]
}

fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

fn scalars(v: &[i64]) -> WeightList {
    WeightList::scalars(v).unwrap()
}

fn line(lo: i64, hi: i64) -> Window {
    Window::from_ints(&[lo], &[hi]).unwrap()
}

/// `a v + b` in one variable.
fn affine(a: i64, b: i64) -> MultiPoly<Rat> {
    MultiPoly::affine(&[int(a)], int(b))
}

fn positive_cell(x: &WeightList) -> Cell {
    alcoves_at_origin(x)
        .unwrap()
        .into_iter()
        .find(|c| c.interior[0].is_positive())
        .unwrap()
}

fn negative_cell(x: &WeightList) -> Cell {
    alcoves_at_origin(x)
        .unwrap()
        .into_iter()
        .find(|c| c.interior[0].is_negative())
        .unwrap()
}

fn hat() -> PiecewisePoly<Rat> {
    build_box(&scalars(&[1, 1]), &line(-1, 3)).unwrap()
}

#[test]
fn one_dimensional_spline_profiles() {
    let iv = |n: usize| vec![(vec![1], PartKind::Interval); n];
    let b1 = build_spline(&iv(1), &line(-1, 2)).unwrap();
    assert_eq!(b1.eval(&r(1, 2)).unwrap(), Rat::one());
    assert!(b1.eval(&r(-1, 2)).unwrap().is_zero());
    assert!(b1.eval(&r(3, 2)).unwrap().is_zero());

    let b2 = build_spline(&iv(2), &line(-1, 3)).unwrap();
    assert_eq!(b2.poly_at(&r(1, 2)).unwrap(), affine(1, 0));
    assert_eq!(b2.poly_at(&r(3, 2)).unwrap(), affine(-1, 2));
    assert_eq!(b2.integrate(), Rat::one());

    let rays = build_spline(
        &[(vec![1], PartKind::Ray), (vec![1], PartKind::Ray)],
        &line(-1, 3),
    )
    .unwrap();
    assert_eq!(rays.poly_at(&r(5, 2)).unwrap(), affine(1, 0));
    assert!(rays.poly_at(&r(-1, 2)).unwrap().is_zero());
}

#[test]
fn polarized_cone_splines() {
    let w = line(-3, 3);
    let pos = RegularFace::from_ints(&[1]);
    let neg = RegularFace::from_ints(&[-1]);
    let t = build_t_polarized(&scalars(&[1]), &pos, &w).unwrap();
    assert_eq!(t.eval(&r(5, 2)).unwrap(), Rat::one());
    assert!(t.eval(&r(-5, 2)).unwrap().is_zero());
    let t = build_t_polarized(&scalars(&[1]), &neg, &w).unwrap();
    assert_eq!(t.eval(&r(-5, 2)).unwrap(), -Rat::one());
    assert!(t.eval(&r(5, 2)).unwrap().is_zero());
    let t = build_t_polarized(&scalars(&[1, 1]), &pos, &w).unwrap();
    assert_eq!(t.poly_at(&r(1, 2)).unwrap(), affine(1, 0));
}

#[test]
fn planar_box_spline_has_unit_mass() {
    let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let b = build_box(&u2, &zonotope_window(&u2)).unwrap();
    assert_eq!(b.integrate(), Rat::one());
    assert_eq!(b.max_degree(), 1);
    let v = [Rat::new(5, 4), Rat::new(2, 3)];
    let oracle = spline_point_oracle(&u2, SplineKind::Box, &v).unwrap();
    assert_eq!(b.eval(&v).unwrap(), oracle);
}

#[test]
fn derivative_difference_and_translate() {
    let w = line(-1, 2);
    let b1 = build_box(&scalars(&[1]), &w).unwrap();
    assert!(b1.partial_pw(&[1]).pieces().all(|(_, p)| p.is_zero()));
    let heaviside = build_spline(&[(vec![1], PartKind::Ray)], &line(-2, 3)).unwrap();
    assert!(heaviside.nabla(&[1]).equal_on_window(&b1));
    assert!(b1.translate(&[0]).equal_on_window(&b1));
    assert!(!b1.equal_on_window(&hat()));
}

#[test]
fn operator_series_on_pieces() {
    let x2 = scalars(&[1, 1]);
    let todd = hat().apply_series(&OperatorSeries::todd(&x2)).unwrap();
    assert_eq!(todd.poly_at(&r(1, 2)).unwrap(), affine(1, 1));
    assert_eq!(todd.poly_at(&r(3, 2)).unwrap(), affine(-1, 1));
    let i1 = OperatorSeries::cube_average(&scalars(&[1]))
        .apply(&affine(1, 0))
        .unwrap();
    assert_eq!(i1, MultiPoly::affine(&[int(1)], Rat::new(-1, 2)));
    let any = OperatorSeries::todd(&x2).then(OperatorSeries::cube_average(&scalars(&[3])));
    assert!(any.apply(&MultiPoly::<Rat>::zero(1)).unwrap().is_zero());

    let c = positive_cell(&x2);
    let pts: Vec<Vec<i64>> = (-1..=3).map(|l| vec![l]).collect();
    let limits = lim_alcove(&todd, &c, &pts).unwrap();
    assert!(limits.agrees_on(&LatticeFunction::delta0(1), &pts).unwrap());
}

#[test]
fn one_sided_limits_of_the_indicator() {
    let x1 = scalars(&[1]);
    let b1 = build_box(&x1, &line(-2, 3)).unwrap();
    let c = positive_cell(&x1);
    assert_eq!(b1.lim(&c, &[0]).unwrap(), Rat::one());
    assert!(b1.lim(&c, &[1]).unwrap().is_zero());
    assert!(b1.lim(&c, &[-1]).unwrap().is_zero());
    assert!(b1.lim(&negative_cell(&x1), &[0]).unwrap().is_zero());
}

#[test]
fn rays_decompose_into_intervals() {
    let w = line(-1, 4);
    let x2 = scalars(&[1, 1]);
    let lhs: PiecewisePoly<Rat> =
        semidiscrete_convolve(&hat(), &partition_function(&x2).unwrap(), &w).unwrap();
    let t2 = build_spline(&[(vec![1], PartKind::Ray), (vec![1], PartKind::Ray)], &w).unwrap();
    assert!(lhs.equal_on_window(&t2));

    let delta: PiecewisePoly<Rat> =
        semidiscrete_convolve(&hat(), &LatticeFunction::delta0(1), &w).unwrap();
    assert!(delta.equal_on_window(&hat()));

    let x1 = scalars(&[1]);
    let b1 = build_box(&x1, &line(-1, 2)).unwrap();
    let stacked: PiecewisePoly<Rat> =
        semidiscrete_convolve(&b1, &partition_function(&x1).unwrap(), &w).unwrap();
    let t1 = build_spline(&[(vec![1], PartKind::Ray)], &w).unwrap();
    assert!(stacked.equal_on_window(&t1));
}

#[test]
fn partition_function_values() {
    assert_eq!(
        partition_function(&scalars(&[1, 1]))
            .unwrap()
            .eval_rat(&[3])
            .unwrap(),
        int(4)
    );
    let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let p = partition_function(&u2).unwrap();
    assert_eq!(p.eval_rat(&[2, 1]).unwrap(), int(2));
    assert_eq!(p.eval_rat(&[0, 0]).unwrap(), int(1));

    let neg = polarized_partition(&scalars(&[1]), &RegularFace::from_ints(&[-1])).unwrap();
    let flipped = polarized_partition(&scalars(&[-1]), &RegularFace::from_ints(&[1])).unwrap();
    for l in -5..=5 {
        assert_eq!(
            neg.eval_rat(&[l]).unwrap(),
            if l <= -1 { int(-1) } else { int(0) }
        );
        assert_eq!(
            flipped.eval_rat(&[l]).unwrap(),
            if l >= 1 { int(-1) } else { int(0) }
        );
    }
}

#[test]
fn difference_operators_on_lattice_functions() {
    let p = partition_function(&scalars(&[1, 1])).unwrap();
    let pts = lattice_box(&[(-5, 5)]);
    assert!(p
        .nabla_all(&[vec![1], vec![1]])
        .agrees_on(&LatticeFunction::delta0(1), &pts)
        .unwrap());
    assert!(p
        .g_hat(&ToricVertex::identity(1))
        .agrees_on(&p, &pts)
        .unwrap());
    let half = ToricVertex::new(vec![Rat::new(1, 2)]);
    let f = LatticeFunction::delta0(1).twisted_nabla(&half, &[vec![2]]);
    assert_eq!(f.eval_rat(&[0]).unwrap(), int(1));
    assert_eq!(f.eval_rat(&[2]).unwrap(), int(-1));
    assert!(f.eval_rat(&[1]).unwrap().is_zero());
}

#[test]
fn polynomial_and_quasi_polynomial_spaces() {
    assert_eq!(d_space_basis(&scalars(&[1, 1])).unwrap().len(), 2);
    let e = WeightList::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(d_space_basis(&e).unwrap().len(), 1);
    let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    assert_eq!(d_space_basis(&u2).unwrap().len(), 3);
    assert_eq!(dm_space_basis(&scalars(&[2])).unwrap().len(), 2);
    let n2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap();
    assert_eq!(dm_space_basis(&n2).unwrap().len(), 7);
}

#[test]
fn interpolation_examples() {
    let x2 = scalars(&[1, 1]);
    let c = positive_cell(&x2);
    let data = |at: i64| -> BTreeMap<Vec<i64>, Cyclo> {
        [-1, 0]
            .into_iter()
            .map(|p| (vec![p], Cyclo::from_rat(int((p == at) as i64))))
            .collect()
    };
    let k = dm_interpolate(&x2, &c, &data(0)).unwrap();
    let m = dm_interpolate(&x2, &c, &data(-1)).unwrap();
    for l in -4..=4 {
        assert_eq!(k.eval(&[l]).to_rational().unwrap(), int(l + 1));
        assert_eq!(m.eval(&[l]).to_rational().unwrap(), int(-l));
    }
    let x = scalars(&[2]);
    let even = dm_interpolate(&x, &positive_cell(&x), &data(0)).unwrap();
    for l in -4..=4 {
        let expected = if l % 2 == 0 { int(1) } else { int(0) };
        assert_eq!(even.eval(&[l]).to_rational().unwrap(), expected);
    }
}

#[test]
fn omega_for_the_half_vertex() {
    let x = scalars(&[2]);
    let half = ToricVertex::new(vec![Rat::new(1, 2)]);
    let w = line(-3, 5);
    let om = omega_g(&x, &half, &LatticeFunction::delta0(1), &w).unwrap();
    let expect =
        |v: Vec<Rat>, val: Rat| assert_eq!(om.eval(&v).unwrap().to_rational().unwrap(), val);
    expect(r(1, 2), Rat::new(1, 2));
    expect(r(3, 2), Rat::new(1, 2));
    expect(r(5, 2), Rat::zero());
    expect(r(-1, 2), Rat::zero());

    // the twisted differences of δ_0 along e1, e2 at g = (1/2, 1/2) are four
    // unit translates because g^{-e1} = g^{-e2} = −1
    let n2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap();
    let g = ToricVertex::new(vec![Rat::new(1, 2), Rat::new(1, 2)]);
    let w2 = Window::cube(-2, 3, 2).unwrap();
    let om = omega_g(&n2, &g, &LatticeFunction::delta0(2), &w2).unwrap();
    let xg = WeightList::new(2, vec![vec![1, 1], vec![1, -1]]).unwrap();
    let bxg = build_box(&xg, &zonotope_window(&xg)).unwrap();
    let four = LatticeFunction::finite_rat(
        2,
        [[0, 0], [1, 0], [0, 1], [1, 1]]
            .into_iter()
            .map(|p| (p.to_vec(), int(1))),
    );
    let expected: PiecewisePoly<Cyclo> = semidiscrete_convolve(&bxg, &four, &w2).unwrap();
    assert!(om.equal_on_window(&expected));
    assert!(omega_g(
        &n2,
        &ToricVertex::new(vec![Rat::new(1, 3), Rat::zero()]),
        &LatticeFunction::delta0(2),
        &w2
    )
    .is_err());
}

#[test]
fn inversion_examples() {
    let x2 = scalars(&[1, 1]);
    let r2 = invert_unimodular(&x2, &LatticeFunction::delta0(1), &[(-3, 3)]).unwrap();
    assert!(r2.verdict);
    let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    assert!(
        invert_unimodular(&u2, &LatticeFunction::delta0(2), &[(-2, 2), (-2, 2)])
            .unwrap()
            .verdict
    );
    let g = invert_general(&x2, &LatticeFunction::delta0(1), &[(-3, 3)]).unwrap();
    assert!(g.verdict);
    assert_eq!(g.contributions.len(), 1);

    let two = invert_general(&scalars(&[2]), &LatticeFunction::delta0(1), &[(-4, 4)]).unwrap();
    assert!(two.verdict);
    assert_eq!(two.contributions.len(), 2);
    // each vertex contributes half of δ_0 at the origin
    for c in &two.contributions {
        assert_eq!(c.restriction.eval_rat(&[0]).unwrap(), Rat::new(1, 2));
    }
    let n2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]).unwrap();
    assert!(
        invert_general(&n2, &LatticeFunction::delta0(2), &[(-2, 2), (-2, 2)])
            .unwrap()
            .verdict
    );
}

#[test]
fn brion_vergne_examples() {
    let (p, rep) = brion_vergne_partition(&scalars(&[1, 1]), &[(-3, 6)]).unwrap();
    assert!(rep.verdict);
    for l in -3..=6 {
        assert_eq!(
            p.eval_rat(&[l]).unwrap(),
            int(if l >= 0 { l + 1 } else { 0 })
        );
    }
    let (p, _) = brion_vergne_partition(&scalars(&[2]), &[(0, 6)]).unwrap();
    let got: Vec<Rat> = (0..=6).map(|l| p.eval_rat(&[l]).unwrap()).collect();
    assert_eq!(got, [1, 0, 1, 0, 1, 0, 1].map(int).to_vec());
    let u2 = WeightList::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let (p, _) = brion_vergne_partition(&u2, &[(0, 3), (0, 3)]).unwrap();
    assert_eq!(p.eval_rat(&[2, 1]).unwrap(), int(2));
}

#[test]
fn index_examples() {
    let pos = RegularFace::from_ints(&[1]);
    let neg = RegularFace::from_ints(&[-1]);
    let (d, s) = atiyah_index_forms(&scalars(&[1]), &pos).unwrap();
    let (dn, sn) = atiyah_index_forms(&scalars(&[1]), &neg).unwrap();
    let (d2, s2) = atiyah_index_forms(&scalars(&[1, 1]), &pos).unwrap();
    for l in -6..=6 {
        let one = if l >= 1 { int(-1) } else { int(0) };
        assert_eq!(d.eval_rat(&[l]).unwrap(), one);
        assert_eq!(s.eval_rat(&[l]).unwrap(), one);
        let mirrored = if l <= 0 { int(1) } else { int(0) };
        assert_eq!(dn.eval_rat(&[l]).unwrap(), mirrored);
        assert_eq!(sn.eval_rat(&[l]).unwrap(), mirrored);
        let two = if l >= 2 { int(l - 1) } else { int(0) };
        assert_eq!(d2.eval_rat(&[l]).unwrap(), two);
        assert_eq!(s2.eval_rat(&[l]).unwrap(), two);
    }

    let rep = verify_box_index(&scalars(&[1]), &pos, &line(-2, 4)).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.left.eval(&r(1, 2)).unwrap(), Rat::new(-1, 2));
    assert_eq!(rep.left.eval(&r(5, 2)).unwrap(), int(-1));
    assert!(rep.left.eval(&r(-1, 2)).unwrap().is_zero());
    assert!(
        verify_box_index(&scalars(&[1]), &neg, &line(-4, 2))
            .unwrap()
            .holds
    );

    assert!(
        general_index_reconstruction(&scalars(&[1]), &pos, &[(-4, 4)])
            .unwrap()
            .verdict
    );
    assert!(
        general_index_reconstruction(&scalars(&[2]), &pos, &[(-6, 6)])
            .unwrap()
            .verdict
    );
}
