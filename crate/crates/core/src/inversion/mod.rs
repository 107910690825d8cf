//! Recovering lattice functions from splines by Todd and twisted operators,
//! the vertex-sum evaluation of partition functions, and lattice index
//! identities.

use std::collections::{BTreeMap, HashMap};

use serde_json::json;

use crate::discrete::{
    partition_function, polarized_partition, table_rows, LatticeFunction, Point, RegularFace,
};
use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, Rat, Scalar};
use crate::geometry::{
    alcoves_at_origin, base_alcove, base_alcove_in, lattice_box, positive_functional, zonotope_window, AlcoveRegion,
    Cell, Window,
};
use crate::lattice::{fixed_sublist, is_unimodular, toric_vertices, ToricVertex, WeightList};
use crate::piecewise::{
    build_box, build_spline, lim_alcove, semidiscrete_convolve, ConeSpline, OperatorSeries,
    PartKind, PiecewisePoly,
};
use crate::poly::MultiPoly;

/// Inclusive integer ranges per coordinate.
pub type LatticeBox = Vec<(i64, i64)>;

/// Overrides for the deterministic defaults.
#[derive(Debug, Clone, Default)]
pub struct InversionOptions {
    /// Point of the limit alcove; the alcove must have 0 in its closure.
    pub alcove_point: Option<Vec<Rat>>,
    /// Extra degrees added to the default series truncation `|X|`.
    pub truncation_margin: usize,
}

impl InversionOptions {
    fn alcove(&self, x: &WeightList, default: impl FnOnce() -> Result<Cell>) -> Result<Cell> {
        match &self.alcove_point {
            None => default(),
            Some(p) => alcove_at_origin_containing(x, p),
        }
    }
}

/// The alcove adjacent to 0 that contains the regular point `p`.
pub fn alcove_at_origin_containing(x: &WeightList, p: &[Rat]) -> Result<Cell> {
    alcoves_at_origin(x)?
        .into_iter()
        .find(|c| c.polyhedron().contains_strictly(p))
        .ok_or_else(|| Error::Invalid("point is not in an alcove adjacent to the origin".into()))
}

#[derive(Debug, Clone)]
pub struct VertexContribution {
    pub vertex: ToricVertex,
    /// Indices of `X^g`.
    pub fixed: Vec<usize>,
    pub omega: Option<PiecewisePoly<Cyclo>>,
    pub transformed: Option<PiecewisePoly<Cyclo>>,
    /// `λ ↦ g^λ lim_c(...)(λ)` on the box.
    pub restriction: LatticeFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub point: Point,
    pub got: Cyclo,
    pub expected: Cyclo,
}

#[derive(Debug, Clone)]
pub struct InversionReport {
    pub description: String,
    pub base_alcove: Cell,
    pub points: Vec<Point>,
    pub contributions: Vec<VertexContribution>,
    pub reconstructed: LatticeFunction,
    pub expected: LatticeFunction,
    /// True iff `reconstructed == expected` at every point of the box.
    pub verdict: bool,
    pub mismatch: Option<Mismatch>,
}

impl InversionReport {
    fn assemble(
        description: String,
        base_alcove: Cell,
        points: Vec<Point>,
        contributions: Vec<VertexContribution>,
        expected: &LatticeFunction,
    ) -> Result<Self> {
        let dim = base_alcove.interior.len();
        let mut values = Vec::with_capacity(points.len());
        let mut mismatch = None;
        for p in &points {
            let mut acc = Cyclo::zero();
            for c in &contributions {
                acc = acc.add(&c.restriction.eval(p)?);
            }
            // a sum of conjugate vertex terms must land in Q
            let r = Cyclo::from_rat(acc.to_rational()?);
            let e = expected.eval(p)?;
            if mismatch.is_none() && r != e {
                mismatch = Some(Mismatch {
                    point: p.clone(),
                    got: r.clone(),
                    expected: e,
                });
            }
            values.push((p.clone(), r));
        }
        Ok(InversionReport {
            description,
            base_alcove,
            points,
            contributions,
            reconstructed: LatticeFunction::finite(dim, values),
            expected: expected.clone(),
            verdict: mismatch.is_none(),
            mismatch,
        })
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut contribs = Vec::new();
        for c in &self.contributions {
            contribs.push(json!({
                "vertex": c.vertex,
                "fixed": c.fixed,
                "omega": c.omega.as_ref().map(PiecewisePoly::to_json),
                "transformed": c.transformed.as_ref().map(PiecewisePoly::to_json),
                "restriction": table_rows(&c.restriction, &self.points)?,
            }));
        }
        Ok(json!({
            "description": self.description,
            "base_alcove": self.base_alcove,
            "contributions": contribs,
            "reconstructed": table_rows(&self.reconstructed, &self.points)?,
            "expected": table_rows(&self.expected, &self.points)?,
            "verdict": self.verdict,
            "mismatch": self.mismatch.as_ref().map(|m| json!({
                "point": m.point,
                "got": m.got,
                "expected": m.expected,
            })),
        }))
    }
}

fn check_box(x: &WeightList, bx: &[(i64, i64)]) -> Result<Vec<Point>> {
    if bx.len() != x.dim() || bx.iter().any(|(l, h)| l > h) {
        return Err(Error::Invalid("lattice box does not match the dimension".into()));
    }
    Ok(lattice_box(bx))
}

/// The box dilated by the bounding box of `Z(X ∪ −X)`.
pub fn working_window(x: &WeightList, bx: &[(i64, i64)]) -> Window {
    let lo: Vec<Rat> = (0..x.dim())
        .map(|i| {
            let r: i64 = x.weights().iter().map(|a| a[i].abs()).sum();
            Rat::from_int(bx[i].0 - r.max(1))
        })
        .collect();
    let hi: Vec<Rat> = (0..x.dim())
        .map(|i| {
            let r: i64 = x.weights().iter().map(|a| a[i].abs()).sum();
            Rat::from_int(bx[i].1 + r.max(1))
        })
        .collect();
    Window::new(lo, hi).expect("nonempty box")
}

fn split_by_vertex(x: &WeightList, g: &ToricVertex) -> (Vec<usize>, WeightList, WeightList) {
    let fixed = fixed_sublist(x, g);
    let rest = x.complement(&fixed);
    (fixed.clone(), x.sublist(&fixed), x.sublist(&rest))
}

/// `K = lim_c Todd(X)_pw (B_X *_d K)` for unimodular `X`.
pub fn invert_unimodular(
    x: &WeightList,
    k: &LatticeFunction,
    bx: &[(i64, i64)],
) -> Result<InversionReport> {
    invert_unimodular_with(x, k, bx, &InversionOptions::default())
}

pub fn invert_unimodular_with(
    x: &WeightList,
    k: &LatticeFunction,
    bx: &[(i64, i64)],
    opts: &InversionOptions,
) -> Result<InversionReport> {
    x.require_spanning()?;
    if !is_unimodular(x) {
        return Err(Error::NotUnimodular);
    }
    let points = check_box(x, bx)?;
    let c = opts.alcove(x, || base_alcove(x, true))?;
    let w = working_window(x, bx);
    let b = build_box(x, &zonotope_window(x))?;
    let conv: PiecewisePoly<Rat> = semidiscrete_convolve(&b, k, &w)?;
    let todd = conv.apply_series(
        &OperatorSeries::todd(x).with_truncation(x.len() + opts.truncation_margin),
    )?;
    let restriction = lim_alcove(&todd, &c, &points)?;
    let contribution = VertexContribution {
        vertex: ToricVertex::identity(x.dim()),
        fixed: x.all_indices(),
        omega: Some(conv.to_cyclo()),
        transformed: Some(todd.to_cyclo()),
        restriction,
    };
    InversionReport::assemble(
        format!("unimodular inversion for X = {:?}", x.weights()),
        c,
        points,
        vec![contribution],
        k,
    )
}

/// `ω_g(K) = B_{X^g} *_d (ĝ^{−1} ∇_{X∖X^g} K)` on `W`.
pub fn omega_g(
    x: &WeightList,
    g: &ToricVertex,
    k: &LatticeFunction,
    w: &Window,
) -> Result<PiecewisePoly<Cyclo>> {
    if !toric_vertices(x)?.contains(g) {
        return Err(Error::NotAVertex);
    }
    let (_, xg, rest) = split_by_vertex(x, g);
    let f = k.nabla_all(rest.weights()).g_hat(&g.inverse());
    let b = build_box(&xg, &zonotope_window(&xg))?;
    semidiscrete_convolve(&b, &f, w)
}

/// `K = Σ_g ĝ lim_c (D(g, X∖X^g)^{−1} Todd(X^g))_pw ω_g(K)`. `K` may have
/// infinite support as long as it can be evaluated.
pub fn invert_general(
    x: &WeightList,
    k: &LatticeFunction,
    bx: &[(i64, i64)],
) -> Result<InversionReport> {
    invert_general_with(x, k, bx, &InversionOptions::default())
}

pub fn invert_general_with(
    x: &WeightList,
    k: &LatticeFunction,
    bx: &[(i64, i64)],
    opts: &InversionOptions,
) -> Result<InversionReport> {
    x.require_spanning()?;
    let points = check_box(x, bx)?;
    let c = opts.alcove(x, || base_alcove(x, true))?;
    let w = working_window(x, bx);
    let mut contributions = Vec::new();
    for g in toric_vertices(x)? {
        let (fixed, xg, rest) = split_by_vertex(x, &g);
        let omega = omega_g(x, &g, k, &w)?;
        let op = OperatorSeries::twisted_inverse(&g, &rest)?
            .then(OperatorSeries::todd(&xg))
            .with_truncation(x.len() + opts.truncation_margin);
        let transformed = omega.apply_series(&op)?;
        let restriction = lim_alcove(&transformed, &c, &points)?.g_hat(&g);
        contributions.push(VertexContribution {
            vertex: g,
            fixed,
            omega: Some(omega),
            transformed: Some(transformed),
            restriction,
        });
    }
    InversionReport::assemble(
        format!("vertex-sum inversion for X = {:?}", x.weights()),
        c,
        points,
        contributions,
        k,
    )
}

/// Unimodular or general inversion, whichever applies.
pub fn invert(
    x: &WeightList,
    k: &LatticeFunction,
    bx: &[(i64, i64)],
    opts: &InversionOptions,
) -> Result<InversionReport> {
    x.require_spanning()?;
    if is_unimodular(x) {
        invert_unimodular_with(x, k, bx, opts)
    } else {
        invert_general_with(x, k, bx, opts)
    }
}

/// `P_X = Σ_g ĝ lim_c (Todd(X^g) D(g, X∖X^g)^{−1} T_{X^g})` with `c` an
/// alcove in `Cone(X)` touching 0, checked against the recursive `P_X`.
pub fn brion_vergne_partition(
    x: &WeightList,
    bx: &[(i64, i64)],
) -> Result<(LatticeFunction, InversionReport)> {
    brion_vergne_partition_with(x, bx, &InversionOptions::default())
}

pub fn brion_vergne_partition_with(
    x: &WeightList,
    bx: &[(i64, i64)],
    opts: &InversionOptions,
) -> Result<(LatticeFunction, InversionReport)> {
    x.require_spanning()?;
    if positive_functional(x.dim(), x.weights()).is_none() {
        return Err(Error::NotPointed);
    }
    let points = check_box(x, bx)?;
    let c = opts.alcove(x, || base_alcove_in(x, AlcoveRegion::Cone))?;
    let mut contributions = Vec::new();
    for g in toric_vertices(x)? {
        let (fixed, xg, rest) = split_by_vertex(x, &g);
        let cone = ConeSpline::new(&xg, Rat::one())?;
        let op = OperatorSeries::twisted_inverse(&g, &rest)?
            .then(OperatorSeries::todd(&xg))
            .with_truncation(x.len() + opts.truncation_margin);
        let mut memo: HashMap<Vec<i8>, MultiPoly<Cyclo>> = HashMap::new();
        let mut values = Vec::with_capacity(points.len());
        for p in &points {
            let v: Vec<Rat> = c
                .interior
                .iter()
                .zip(p)
                .map(|(a, &l)| a + &Rat::from_int(l))
                .collect();
            let tope = cone.tope(&v)?;
            let q = match memo.get(&tope) {
                Some(q) => q.clone(),
                None => {
                    let q = op.apply(&cone.poly_at(&v)?.to_cyclo())?;
                    memo.insert(tope, q.clone());
                    q
                }
            };
            values.push((p.clone(), q.eval_int(p)));
        }
        contributions.push(VertexContribution {
            vertex: g.clone(),
            fixed,
            omega: None,
            transformed: None,
            restriction: LatticeFunction::finite(x.dim(), values).g_hat(&g),
        });
    }
    let expected = partition_function(x)?;
    let report = InversionReport::assemble(
        format!("vertex-sum partition function for X = {:?}", x.weights()),
        c,
        points,
        contributions,
        &expected,
    )?;
    Ok((report.reconstructed.clone(), report))
}

/// The two lattice forms of the index of the Atiyah symbol: `P_{−X}^F` and
/// `(−1)^{|X|} t_{a_X} P_X^F`.
pub fn atiyah_index_forms(
    x: &WeightList,
    face: &RegularFace,
) -> Result<(LatticeFunction, LatticeFunction)> {
    let direct = polarized_partition(&x.negated(), face)?;
    let sign = if x.len() % 2 == 0 { 1 } else { -1 };
    let shifted = polarized_partition(x, face)?
        .translate(&x.total())
        .scale(&Cyclo::from_rat(Rat::from_int(sign)));
    Ok((direct, shifted))
}

/// `ind_m(Σ^F) = P_{−X}^F`; the alternative form is checked on `[−6, 6]^s`.
pub fn atiyah_index(x: &WeightList, face: &RegularFace) -> Result<LatticeFunction> {
    let (direct, shifted) = atiyah_index_forms(x, face)?;
    let pts = lattice_box(&vec![(-6, 6); x.dim()]);
    if !direct.agrees_on(&shifted, &pts)? {
        return Err(Error::Invalid("index forms disagree".into()));
    }
    Ok(direct)
}

#[derive(Debug, Clone)]
pub struct BoxIndexReport {
    pub left: PiecewisePoly<Rat>,
    pub right: PiecewisePoly<Rat>,
    pub holds: bool,
    /// First refined cell where the sides differ.
    pub counterexample: Option<(Cell, MultiPoly<Rat>, MultiPoly<Rat>)>,
}

impl BoxIndexReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "holds": self.holds,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "counterexample": self.counterexample.as_ref().map(|(c, p, q)| json!({
                "cell": c, "left": p, "right": q,
            })),
        })
    }
}

/// `B_{X ∪ −X} *_d P_{−X}^F = B_X *_c T_{−X}^F` on `W`, where
/// `T_{−X}^F = (−1)^{|A|} T_{A ∪ −B}` for the split `X = A ∪ B` by `F`.
pub fn verify_box_index(x: &WeightList, face: &RegularFace, w: &Window) -> Result<BoxIndexReport> {
    let (a, b) = face.split(x)?;
    let xr = x.concat(&x.negated());
    let double = build_box(&xr, &zonotope_window(&xr))?;
    let left: PiecewisePoly<Rat> = semidiscrete_convolve(&double, &atiyah_index(x, face)?, w)?;
    let mut parts: Vec<(Vec<i64>, PartKind)> = x
        .weights()
        .iter()
        .map(|v| (v.clone(), PartKind::Interval))
        .collect();
    for &i in &a {
        parts.push((x.get(i).to_vec(), PartKind::Ray));
    }
    for &i in &b {
        parts.push((x.get(i).to_vec(), PartKind::NegRay));
    }
    let sign = if a.len() % 2 == 0 { Rat::one() } else { -Rat::one() };
    let right = build_spline(&parts, w)?.scale(&sign);
    let counterexample = left.first_difference(&right)?;
    Ok(BoxIndexReport {
        holds: counterexample.is_none(),
        left,
        right,
        counterexample,
    })
}

/// Recovers `ind_m = P_{−X}^F` through the vertex-sum inversion over the
/// doubled list `X ∪ −X`.
pub fn general_index_reconstruction(
    x: &WeightList,
    face: &RegularFace,
    bx: &[(i64, i64)],
) -> Result<InversionReport> {
    general_index_reconstruction_with(x, face, bx, &InversionOptions::default())
}

pub fn general_index_reconstruction_with(
    x: &WeightList,
    face: &RegularFace,
    bx: &[(i64, i64)],
    opts: &InversionOptions,
) -> Result<InversionReport> {
    x.require_spanning()?;
    let k = atiyah_index(x, face)?;
    let xr = x.concat(&x.negated());
    let mut report = invert_general_with(&xr, &k, bx, opts)?;
    report.description = format!(
        "index reconstruction for X = {:?}, face {:?}",
        x.weights(),
        face.phi()
    );
    Ok(report)
}

/// Values of a finite report table keyed by point.
pub fn table(f: &LatticeFunction, points: &[Point]) -> Result<BTreeMap<Point, Cyclo>> {
    Ok(f.tabulate(points)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_recovers_delta() {
        let x = WeightList::scalars(&[1, 1]).unwrap();
        let r = invert_unimodular(&x, &LatticeFunction::delta0(1), &[(-3, 3)]).unwrap();
        assert!(r.verdict, "{:?}", r.mismatch);
    }

    #[test]
    fn doubled_weight_recovers_delta() {
        let x = WeightList::scalars(&[2]).unwrap();
        let r = invert_general(&x, &LatticeFunction::delta0(1), &[(-4, 4)]).unwrap();
        assert_eq!(r.contributions.len(), 2);
        assert!(r.verdict, "{:?}", r.mismatch);
    }

    #[test]
    fn even_indicator() {
        let x = WeightList::scalars(&[2]).unwrap();
        let (p, r) = brion_vergne_partition(&x, &[(0, 6)]).unwrap();
        assert!(r.verdict);
        for l in 0..=6 {
            assert_eq!(p.eval_rat(&[l]).unwrap(), Rat::from_int((1 + (-1i64).pow(l as u32)) / 2));
        }
    }

    #[test]
    fn atiyah_examples() {
        let x = WeightList::scalars(&[1]).unwrap();
        let k = atiyah_index(&x, &RegularFace::from_ints(&[1])).unwrap();
        assert_eq!(k.eval_rat(&[1]).unwrap(), -Rat::one());
        assert!(k.eval_rat(&[0]).unwrap().is_zero());
        let k = atiyah_index(&x, &RegularFace::from_ints(&[-1])).unwrap();
        assert_eq!(k.eval_rat(&[0]).unwrap(), Rat::one());
        assert_eq!(k.eval_rat(&[-3]).unwrap(), Rat::one());
        assert!(k.eval_rat(&[1]).unwrap().is_zero());
    }

    #[test]
    fn box_index_in_one_dim() {
        let x = WeightList::scalars(&[1]).unwrap();
        let w = Window::from_ints(&[-3], &[3]).unwrap();
        for phi in [1, -1] {
            let r = verify_box_index(&x, &RegularFace::from_ints(&[phi]), &w).unwrap();
            assert!(r.holds, "{:?}", r.counterexample);
        }
    }
}
