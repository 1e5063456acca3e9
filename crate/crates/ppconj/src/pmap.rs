//! Piecewise projective homeomorphisms of the line fixing infinity.
//!
//! A map is a strictly increasing list of breakpoints together with one
//! Möbius piece per complementary interval (so `pieces.len() ==
//! breakpoints.len() + 1`). Validation enforces continuity at breakpoints,
//! pole-freeness of every piece on its closed interval, affine end pieces
//! (so the map extends to a homeomorphism of the projective line fixing the
//! point at infinity) and minimality: adjacent equal pieces are merged, which
//! makes structural equality canonical.

use crate::error::{Error, Result};
use crate::exactnum::{rational, FieldSpec, QuadExt};
use crate::moebius::MoebiusMap;

/// A point of the extended line; the derived order puts `-inf < finite < +inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndPoint {
    NegInf,
    Finite(QuadExt),
    PosInf,
}

impl EndPoint {
    pub fn finite(&self) -> Option<&QuadExt> {
        match self {
            EndPoint::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl std::fmt::Display for EndPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EndPoint::NegInf => write!(f, "-inf"),
            EndPoint::Finite(x) => write!(f, "{x}"),
            EndPoint::PosInf => write!(f, "+inf"),
        }
    }
}

/// Pick a point strictly between two ordered endpoints.
pub fn sample_between(lo: &EndPoint, hi: &EndPoint) -> QuadExt {
    match (lo, hi) {
        (EndPoint::NegInf, EndPoint::PosInf) => {
            // Spec is unknown here; callers with finite data use the other arms.
            unreachable!("sample_between needs at least one finite endpoint")
        }
        (EndPoint::NegInf, EndPoint::Finite(b)) => b - &QuadExt::one(b.spec()),
        (EndPoint::Finite(a), EndPoint::PosInf) => a + &QuadExt::one(a.spec()),
        (EndPoint::Finite(a), EndPoint::Finite(b)) => {
            let half = QuadExt::from_rational(rational(1, 2), a.spec());
            &(a + b) * &half
        }
        _ => unreachable!("endpoints out of order"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseProjMap {
    spec: FieldSpec,
    breakpoints: Vec<QuadExt>,
    pieces: Vec<MoebiusMap>,
}

/// Where a map sits relative to the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementClass {
    /// The identity map.
    Identity,
    /// `z(t) < t` everywhere.
    Below,
    /// `z(t) > t` everywhere.
    Above,
    /// Has fixed points or bumps on both sides of the diagonal.
    Mixed,
}

/// A maximal open interval on which the map has no fixed point, with the
/// constant sign of `z(t) - t` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bump {
    pub lo: EndPoint,
    pub hi: EndPoint,
    pub sign: i32,
}

/// A maximal connected component of the fixed set: a point (`lo == hi`) or a
/// closed, possibly unbounded, interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub lo: EndPoint,
    pub hi: EndPoint,
}

impl PiecewiseProjMap {
    /// Validate and canonicalize. `pieces.len()` must be
    /// `breakpoints.len() + 1`.
    pub fn new(breakpoints: Vec<QuadExt>, pieces: Vec<MoebiusMap>) -> Result<Self> {
        if pieces.is_empty() || pieces.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch);
        }
        let spec = pieces[0].spec();
        for p in &pieces {
            spec.require_same(&p.spec())?;
        }
        for b in &breakpoints {
            spec.require_same(&b.spec())?;
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::ValidationError(
                    "breakpoints".into(),
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        if !pieces[0].is_affine() || !pieces[pieces.len() - 1].is_affine() {
            return Err(Error::EndPieceNotAffine);
        }
        // No pole on any closed piece interval.
        for (i, p) in pieces.iter().enumerate() {
            if let Some(pole) = p.pole() {
                let lo_ok = i == 0 || pole > breakpoints[i - 1];
                let hi_ok = i == breakpoints.len() || pole < breakpoints[i];
                if lo_ok && hi_ok {
                    return Err(Error::PoleInsideInterval(i));
                }
            }
        }
        // Continuity at every breakpoint.
        for (i, b) in breakpoints.iter().enumerate() {
            let left = pieces[i].apply(b)?;
            let right = pieces[i + 1].apply(b)?;
            if left != right {
                return Err(Error::Discontinuous(b.to_string()));
            }
        }
        // Minimality: merge adjacent equal pieces.
        let mut bk: Vec<QuadExt> = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<MoebiusMap> = vec![pieces[0].clone()];
        for (b, p) in breakpoints.into_iter().zip(pieces.into_iter().skip(1)) {
            if ps.last().unwrap() == &p {
                continue;
            }
            bk.push(b);
            ps.push(p);
        }
        Ok(PiecewiseProjMap {
            spec,
            breakpoints: bk,
            pieces: ps,
        })
    }

    pub fn identity(spec: FieldSpec) -> Self {
        PiecewiseProjMap {
            spec,
            breakpoints: vec![],
            pieces: vec![MoebiusMap::identity(spec)],
        }
    }

    /// A map given by a single global affine piece.
    pub fn from_affine(m: MoebiusMap) -> Result<Self> {
        PiecewiseProjMap::new(vec![], vec![m])
    }

    pub fn translation(offset: QuadExt) -> Self {
        let spec = offset.spec();
        PiecewiseProjMap {
            spec,
            breakpoints: vec![],
            pieces: vec![MoebiusMap::translation(offset)],
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn breakpoints(&self) -> &[QuadExt] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[MoebiusMap] {
        &self.pieces
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].is_identity()
    }

    /// Endpoints of the closed interval on which piece `i` is in charge.
    pub fn piece_interval(&self, i: usize) -> (EndPoint, EndPoint) {
        let lo = if i == 0 {
            EndPoint::NegInf
        } else {
            EndPoint::Finite(self.breakpoints[i - 1].clone())
        };
        let hi = if i == self.breakpoints.len() {
            EndPoint::PosInf
        } else {
            EndPoint::Finite(self.breakpoints[i].clone())
        };
        (lo, hi)
    }

    /// Index of the piece whose closed interval contains `t` (ties at a
    /// breakpoint resolve to the right piece; continuity makes this
    /// immaterial for evaluation).
    pub fn piece_index_at(&self, t: &QuadExt) -> usize {
        self.breakpoints.partition_point(|b| b <= t)
    }

    pub fn apply(&self, t: &QuadExt) -> QuadExt {
        self.pieces[self.piece_index_at(t)]
            .apply(t)
            .expect("validated pieces have no pole on their interval")
    }

    /// Germ at `-inf`: `(slope, intercept)` of the first piece.
    pub fn germ_neg(&self) -> (QuadExt, QuadExt) {
        self.pieces[0]
            .affine_parts()
            .expect("end pieces are affine")
    }

    /// Germ at `+inf`: `(slope, intercept)` of the last piece.
    pub fn germ_pos(&self) -> (QuadExt, QuadExt) {
        self.pieces[self.pieces.len() - 1]
            .affine_parts()
            .expect("end pieces are affine")
    }

    /// Composition `self ∘ rhs`: breakpoints are those of `rhs` together with
    /// the `rhs`-preimages of those of `self`.
    pub fn compose(&self, rhs: &PiecewiseProjMap) -> PiecewiseProjMap {
        assert_eq!(self.spec, rhs.spec, "mixed field specs");
        let rhs_inv = rhs.inverse();
        let mut bk: Vec<QuadExt> = rhs.breakpoints.clone();
        for b in &self.breakpoints {
            bk.push(rhs_inv.apply(b));
        }
        bk.sort();
        bk.dedup();
        let mut pieces = Vec::with_capacity(bk.len() + 1);
        for i in 0..=bk.len() {
            let lo = if i == 0 {
                EndPoint::NegInf
            } else {
                EndPoint::Finite(bk[i - 1].clone())
            };
            let hi = if i == bk.len() {
                EndPoint::PosInf
            } else {
                EndPoint::Finite(bk[i].clone())
            };
            let t = if lo == EndPoint::NegInf && hi == EndPoint::PosInf {
                QuadExt::zero(self.spec)
            } else {
                sample_between(&lo, &hi)
            };
            let inner = &rhs.pieces[rhs.piece_index_at(&t)];
            let outer = &self.pieces[self.piece_index_at(&rhs.apply(&t))];
            pieces.push(outer.compose(inner));
        }
        PiecewiseProjMap::new(bk, pieces)
            .expect("composite of valid maps is valid")
    }

    pub fn inverse(&self) -> PiecewiseProjMap {
        let bk: Vec<QuadExt> = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, b)| {
                self.pieces[i]
                    .apply(b)
                    .expect("no pole at a breakpoint")
            })
            .collect();
        let pieces = self.pieces.iter().map(MoebiusMap::inverse).collect();
        PiecewiseProjMap {
            spec: self.spec,
            breakpoints: bk,
            pieces,
        }
    }

    pub fn pow(&self, n: i64) -> PiecewiseProjMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = PiecewiseProjMap::identity(self.spec);
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn conjugate_by(&self, g: &PiecewiseProjMap) -> PiecewiseProjMap {
        g.inverse().compose(self).compose(g)
    }

    /// Left edge of affinity: the map agrees with its `-inf` germ on
    /// `(-inf, L]`. Returns `0` for globally affine maps.
    pub fn initial_box(&self) -> QuadExt {
        self.breakpoints
            .first()
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(self.spec))
    }

    /// Right edge of affinity: the map agrees with its `+inf` germ on
    /// `[R, +inf)`. Returns `0` for globally affine maps.
    pub fn final_box(&self) -> QuadExt {
        self.breakpoints
            .last()
            .cloned()
            .unwrap_or_else(|| QuadExt::zero(self.spec))
    }

    pub fn breakpoints_in_open(&self, lo: &QuadExt, hi: &QuadExt) -> Vec<QuadExt> {
        self.breakpoints
            .iter()
            .filter(|b| *b > lo && *b < hi)
            .cloned()
            .collect()
    }

    /// Sign of `z(t) - t` at a point.
    pub fn displacement_sign_at(&self, t: &QuadExt) -> i32 {
        (&self.apply(t) - t).sign()
    }

    /// The maximal connected components of the fixed set, sorted.
    ///
    /// Errors with [`Error::FieldEscape`] when some fixed point is real but
    /// lies outside the ambient field.
    pub fn fixed_components(&self) -> Result<Vec<FixedComponent>> {
        let mut comps: Vec<FixedComponent> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let (lo, hi) = self.piece_interval(i);
            if p.is_identity() {
                comps.push(FixedComponent { lo, hi });
                continue;
            }
            for fp in self.piece_fixed_points(i, p, &lo, &hi)? {
                comps.push(FixedComponent {
                    lo: EndPoint::Finite(fp.clone()),
                    hi: EndPoint::Finite(fp),
                });
            }
        }
        comps.sort_by(|x, y| x.lo.cmp(&y.lo).then_with(|| x.hi.cmp(&y.hi)));
        // Merge touching components (a breakpoint fixed by both neighbouring
        // pieces appears twice; an identity piece absorbs its endpoints).
        let mut merged: Vec<FixedComponent> = Vec::new();
        for c in comps {
            match merged.last_mut() {
                Some(last) if c.lo <= last.hi => {
                    if c.hi > last.hi {
                        last.hi = c.hi;
                    }
                }
                _ => merged.push(c),
            }
        }
        Ok(merged)
    }

    /// Fixed points of piece `i` inside its closed interval, using only sign
    /// computations unless a root actually lies in the interval.
    fn piece_fixed_points(
        &self,
        i: usize,
        p: &MoebiusMap,
        lo: &EndPoint,
        hi: &EndPoint,
    ) -> Result<Vec<QuadExt>> {
        let _ = i;
        // End pieces are affine: the single candidate fixed point (if any) is
        // exact, so just compute and filter. Interior pieces get the same
        // treatment, except the quadratic root may escape the field; only
        // report the escape when the root lies in the interval, which we can
        // decide from endpoint signs of q(t) = num(t) - t * den(t).
        match p.fixed_points() {
            Ok(pts) => Ok(pts
                .into_iter()
                .filter(|t| {
                    let ep = EndPoint::Finite(t.clone());
                    ep >= *lo && ep <= *hi
                })
                .collect()),
            Err(Error::FieldEscape(what)) => {
                // q changes sign across each simple root; an escape matters
                // only if a root is inside [lo, hi].
                let q_at = |t: &QuadExt| -> i32 {
                    let (a, b, c, d) = p.coeffs();
                    let num = &(a * t) + b;
                    let den = &(c * t) + d;
                    (&num - &(t * &den)).sign()
                };
                let (lo_t, hi_t) = match (lo, hi) {
                    (EndPoint::Finite(a), EndPoint::Finite(b)) => (a, b),
                    _ => {
                        return Err(Error::InternalInvariantViolation(
                            "non-affine end piece survived validation".into(),
                        ))
                    }
                };
                let s_lo = q_at(lo_t);
                let s_hi = q_at(hi_t);
                if s_lo == 0 || s_hi == 0 {
                    return Err(Error::InternalInvariantViolation(
                        "endpoint root should be exactly representable".into(),
                    ));
                }
                if s_lo != s_hi {
                    return Err(Error::FieldEscape(what));
                }
                // Same endpoint sign: both roots are inside or both outside.
                // The vertex of q = -c t^2 + (a - d) t + b sits at
                // t* = (a - d)/(2c); a sign change at the vertex means both
                // roots are interior.
                let (a, _b, c, d) = p.coeffs();
                let two_c = c * &QuadExt::from_int(2, self.spec);
                let vertex = &(a - d) / &two_c;
                let v_ep = EndPoint::Finite(vertex.clone());
                if v_ep > *lo && v_ep < *hi && q_at(&vertex) != s_lo {
                    return Err(Error::FieldEscape(what));
                }
                Ok(vec![])
            }
            Err(e) => Err(e),
        }
    }

    /// Maximal open fixed-point-free intervals with their displacement signs.
    pub fn bumps(&self) -> Result<Vec<Bump>> {
        if self.is_identity() {
            return Ok(vec![]);
        }
        let comps = self.fixed_components()?;
        let mut edges: Vec<(EndPoint, EndPoint)> = Vec::new();
        if comps.is_empty() {
            edges.push((EndPoint::NegInf, EndPoint::PosInf));
        } else {
            if comps[0].lo != EndPoint::NegInf {
                edges.push((EndPoint::NegInf, comps[0].lo.clone()));
            }
            for w in comps.windows(2) {
                edges.push((w[0].hi.clone(), w[1].lo.clone()));
            }
            if comps[comps.len() - 1].hi != EndPoint::PosInf {
                edges.push((comps[comps.len() - 1].hi.clone(), EndPoint::PosInf));
            }
        }
        let mut bumps = Vec::with_capacity(edges.len());
        for (lo, hi) in edges {
            let t = if lo == EndPoint::NegInf && hi == EndPoint::PosInf {
                QuadExt::zero(self.spec)
            } else {
                sample_between(&lo, &hi)
            };
            let sign = self.displacement_sign_at(&t);
            debug_assert_ne!(sign, 0, "sample point must not be fixed");
            bumps.push(Bump { lo, hi, sign });
        }
        Ok(bumps)
    }

    /// Coarse position relative to the diagonal.
    pub fn displacement_class(&self) -> Result<DisplacementClass> {
        if self.is_identity() {
            return Ok(DisplacementClass::Identity);
        }
        let comps = self.fixed_components()?;
        if !comps.is_empty() {
            return Ok(DisplacementClass::Mixed);
        }
        Ok(match self.displacement_sign_at(&QuadExt::zero(self.spec)) {
            s if s < 0 => DisplacementClass::Below,
            _ => DisplacementClass::Above,
        })
    }

    /// Exact pointwise equality on an open interval (structural equality of
    /// the restrictions): the two maps agree on `(lo, hi)`.
    pub fn agrees_on(&self, other: &PiecewiseProjMap, lo: &EndPoint, hi: &EndPoint) -> bool {
        let mut cuts: Vec<QuadExt> = Vec::new();
        for b in self.breakpoints.iter().chain(other.breakpoints.iter()) {
            let ep = EndPoint::Finite(b.clone());
            if ep > *lo && ep < *hi {
                cuts.push(b.clone());
            }
        }
        cuts.sort();
        cuts.dedup();
        let mut points: Vec<EndPoint> = Vec::with_capacity(cuts.len() + 2);
        points.push(lo.clone());
        points.extend(cuts.into_iter().map(EndPoint::Finite));
        points.push(hi.clone());
        for w in points.windows(2) {
            if w[0] == EndPoint::NegInf && w[1] == EndPoint::PosInf {
                return self == other;
            }
            let t = sample_between(&w[0], &w[1]);
            let pi = &self.pieces[self.piece_index_at(&t)];
            let qi = &other.pieces[other.piece_index_at(&t)];
            if pi != qi {
                return false;
            }
        }
        true
    }
}

/// The piecewise-affine map with translation ends sending one strictly
/// increasing tuple onto another (witness of transitivity on tuples).
pub fn interpolate(from: &[QuadExt], to: &[QuadExt]) -> Result<PiecewiseProjMap> {
    if from.len() != to.len() {
        return Err(Error::LengthMismatch);
    }
    if from.is_empty() {
        return Err(Error::PreconditionViolated(
            "interpolation needs at least one point".into(),
        ));
    }
    for w in from.windows(2).chain(to.windows(2)) {
        if w[0] >= w[1] {
            return Err(Error::PreconditionViolated(
                "interpolation tuples must be strictly increasing".into(),
            ));
        }
    }
    let mut pieces: Vec<MoebiusMap> = Vec::with_capacity(from.len() + 1);
    pieces.push(MoebiusMap::translation(&to[0] - &from[0]));
    for i in 1..from.len() {
        pieces.push(MoebiusMap::affine_through(
            &from[i - 1],
            &to[i - 1],
            &from[i],
            &to[i],
        )?);
    }
    pieces.push(MoebiusMap::translation(
        &to[to.len() - 1] - &from[from.len() - 1],
    ));
    PiecewiseProjMap::new(from.to_vec(), pieces)
}

impl std::fmt::Display for PiecewiseProjMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            let (lo, hi) = self.piece_interval(i);
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  [{lo}, {hi}]  {p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn spec() -> FieldSpec {
        FieldSpec::rational()
    }

    fn q(n: i64, d: i64) -> QuadExt {
        QuadExt::from_rational(rational(n, d), spec())
    }

    fn mb(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> MoebiusMap {
        MoebiusMap::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1), q(d.0, d.1)).unwrap()
    }

    /// One-bump map above the diagonal: t+1 outside [0,1], a projective
    /// bridge inside.
    fn discrete_example() -> PiecewiseProjMap {
        let up = MoebiusMap::translation(q(1, 1));
        let mid = mb((1, 1), (-2, 1), (3, 2), (-2, 1));
        PiecewiseProjMap::new(vec![q(0, 1), q(1, 1)], vec![up.clone(), mid, up]).unwrap()
    }

    #[test]
    fn validation_rejects_discontinuity() {
        let r = PiecewiseProjMap::new(
            vec![q(0, 1)],
            vec![MoebiusMap::translation(q(1, 1)), MoebiusMap::translation(q(2, 1))],
        );
        assert!(matches!(r, Err(Error::Discontinuous(_))));
    }

    #[test]
    fn validation_rejects_pole_inside() {
        // (t-2)/((3/2)t-2) has its pole at 4/3; put it on [0, 2].
        let up = MoebiusMap::translation(q(1, 1));
        let mid = mb((1, 1), (-2, 1), (3, 2), (-2, 1));
        let r = PiecewiseProjMap::new(vec![q(0, 1), q(2, 1)], vec![up.clone(), mid, up]);
        assert!(matches!(r, Err(Error::PoleInsideInterval(1))));
    }

    #[test]
    fn validation_rejects_projective_ends() {
        let mid = mb((1, 1), (-2, 1), (3, 2), (-2, 1));
        let r = PiecewiseProjMap::new(vec![q(0, 1)], vec![mid, MoebiusMap::translation(q(1, 1))]);
        assert!(matches!(r, Err(Error::EndPieceNotAffine)));
    }

    #[test]
    fn redundant_breakpoints_are_merged() {
        let t1 = MoebiusMap::translation(q(1, 1));
        let m = PiecewiseProjMap::new(vec![q(5, 1)], vec![t1.clone(), t1]).unwrap();
        assert!(m.breakpoints().is_empty());
        assert_eq!(m, PiecewiseProjMap::translation(q(1, 1)));
    }

    #[test]
    fn evaluation_picks_the_right_piece() {
        let z = discrete_example();
        assert_eq!(z.apply(&q(-3, 1)), q(-2, 1));
        assert_eq!(z.apply(&q(0, 1)), q(1, 1));
        // (1/2 - 2)/(3/4 - 2) = (-3/2)/(-5/4) = 6/5
        assert_eq!(z.apply(&q(1, 2)), q(6, 5));
        assert_eq!(z.apply(&q(1, 1)), q(2, 1));
        assert_eq!(z.apply(&q(4, 1)), q(5, 1));
    }

    #[test]
    fn inverse_of_discrete_example() {
        let z = discrete_example();
        let zi = z.inverse();
        assert_eq!(zi.breakpoints(), &[q(1, 1), q(2, 1)]);
        // Middle piece of the inverse is (2t-2)/((3/2)t-1).
        assert_eq!(zi.pieces()[1], mb((2, 1), (-2, 1), (3, 2), (-1, 1)));
        assert_eq!(zi.pieces()[0], MoebiusMap::translation(q(-1, 1)));
        assert!(z.compose(&zi).is_identity());
        assert!(zi.compose(&z).is_identity());
    }

    #[test]
    fn square_of_discrete_example() {
        let z = discrete_example();
        let z2 = z.pow(2);
        assert_eq!(z2.breakpoints(), &[q(-1, 1), q(0, 1), q(1, 1)]);
        // (t-1)/((3/2)t - 1/2) on [-1, 0]
        assert_eq!(z2.pieces()[1], mb((1, 1), (-1, 1), (3, 2), (-1, 2)));
        // ((5/2)t - 4)/((3/2)t - 2) on [0, 1]
        assert_eq!(z2.pieces()[2], mb((5, 2), (-4, 1), (3, 2), (-2, 1)));
        assert_eq!(z2.pieces()[0], MoebiusMap::translation(q(2, 1)));
        assert_eq!(z2.pieces()[3], MoebiusMap::translation(q(2, 1)));
        assert_eq!(z.pow(-2), z2.inverse());
        assert!(z.pow(0).is_identity());
    }

    #[test]
    fn germs_and_boxes() {
        let z = discrete_example();
        assert_eq!(z.germ_neg(), (q(1, 1), q(1, 1)));
        assert_eq!(z.germ_pos(), (q(1, 1), q(1, 1)));
        assert_eq!(z.initial_box(), q(0, 1));
        assert_eq!(z.final_box(), q(1, 1));
    }

    #[test]
    fn compose_associates_and_matches_pointwise() {
        let z = discrete_example();
        let w = PiecewiseProjMap::translation(q(-3, 1));
        let zw = z.compose(&w);
        let wz = w.compose(&z);
        for t in [q(-5, 1), q(0, 1), q(7, 2), q(10, 3)] {
            assert_eq!(zw.apply(&t), z.apply(&w.apply(&t)));
            assert_eq!(wz.apply(&t), w.apply(&z.apply(&t)));
        }
        assert_eq!(z.compose(&zw), z.compose(&z).compose(&w));
    }

    #[test]
    fn displacement_and_bumps() {
        let z = discrete_example();
        assert_eq!(z.displacement_class().unwrap(), DisplacementClass::Above);
        assert_eq!(
            z.inverse().displacement_class().unwrap(),
            DisplacementClass::Below
        );
        assert_eq!(
            z.bumps().unwrap(),
            vec![Bump {
                lo: EndPoint::NegInf,
                hi: EndPoint::PosInf,
                sign: 1
            }]
        );
        assert!(PiecewiseProjMap::identity(spec()).bumps().unwrap().is_empty());
    }

    #[test]
    fn fixed_components_of_a_supported_bump() {
        // Identity outside [0, 3], an affine bump above the diagonal inside:
        // 2t on [0, 1], then t/2 + 3/2 on [1, 3] comes back to the diagonal
        // at 3. Fixes exactly (-inf, 0] and [3, +inf).
        let id = MoebiusMap::identity(spec());
        let m = PiecewiseProjMap::new(
            vec![q(0, 1), q(1, 1), q(3, 1)],
            vec![
                id.clone(),
                MoebiusMap::affine(q(2, 1), q(0, 1)).unwrap(),
                MoebiusMap::affine(q(1, 2), q(3, 2)).unwrap(),
                id,
            ],
        )
        .unwrap();
        let comps = m.fixed_components().unwrap();
        assert_eq!(
            comps,
            vec![
                FixedComponent {
                    lo: EndPoint::NegInf,
                    hi: EndPoint::Finite(q(0, 1))
                },
                FixedComponent {
                    lo: EndPoint::Finite(q(3, 1)),
                    hi: EndPoint::PosInf
                },
            ]
        );
        assert_eq!(m.displacement_class().unwrap(), DisplacementClass::Mixed);
        let bumps = m.bumps().unwrap();
        assert_eq!(bumps.len(), 1);
        assert_eq!(bumps[0].sign, 1);
        assert_eq!(bumps[0].lo, EndPoint::Finite(q(0, 1)));
        assert_eq!(bumps[0].hi, EndPoint::Finite(q(3, 1)));
    }

    #[test]
    fn isolated_fixed_point_from_an_affine_piece() {
        // 2t on (-inf, 0]... slope 2 at -inf is fine (affine end piece), the
        // map fixes 0 only: 2t on (-inf,0], t/2 on [0, +inf) is decreasing
        // displacement... z(t)-t = t < 0 left, -t/2 < 0 right: fixes only 0.
        let m = PiecewiseProjMap::new(
            vec![q(0, 1)],
            vec![
                MoebiusMap::affine(q(2, 1), q(0, 1)).unwrap(),
                MoebiusMap::affine(q(1, 2), q(0, 1)).unwrap(),
            ],
        )
        .unwrap();
        let comps = m.fixed_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].lo, EndPoint::Finite(q(0, 1)));
        assert_eq!(comps[0].hi, EndPoint::Finite(q(0, 1)));
        let bumps = m.bumps().unwrap();
        assert_eq!(bumps.len(), 2);
        assert_eq!(bumps[0].sign, -1);
        assert_eq!(bumps[1].sign, -1);
    }

    #[test]
    fn irrational_fixed_points_escape_only_when_inside() {
        // Interior piece (3t-1)/t on [1/2, 2] fixes (3±sqrt 5)/2; the root
        // (3-sqrt5)/2 ≈ 0.38 is outside, (3+sqrt5)/2 ≈ 2.6 outside too, so
        // over plain Q this must not escape. Build a closed-up map around it.
        // Continuity: at 1/2 the piece gives (3/2-1)/(1/2) = 1; at 2 it gives
        // 5/2.
        let left = MoebiusMap::affine_through(&q(0, 1), &q(1, 2), &q(1, 2), &q(1, 1)).unwrap();
        let right = MoebiusMap::affine_through(&q(2, 1), &q(5, 2), &q(3, 1), &q(7, 2)).unwrap();
        let mid = mb((3, 1), (-1, 1), (1, 1), (0, 1));
        let m = PiecewiseProjMap::new(
            vec![q(1, 2), q(2, 1)],
            vec![left, mid.clone(), right],
        )
        .unwrap();
        let comps = m.fixed_components().unwrap();
        assert!(comps.is_empty(), "got {comps:?}");
        // Now stretch the middle interval to [1/2, 3]: the fixed point
        // (3+sqrt5)/2 is interior, so the computation must report the escape.
        let right2 = MoebiusMap::affine_through(&q(3, 1), &q(8, 3), &q(4, 1), &q(11, 3)).unwrap();
        let m2 = PiecewiseProjMap::new(
            vec![q(1, 2), q(3, 1)],
            vec![
                MoebiusMap::affine_through(&q(0, 1), &q(1, 2), &q(1, 2), &q(1, 1)).unwrap(),
                mid,
                right2,
            ],
        )
        .unwrap();
        assert!(matches!(
            m2.fixed_components(),
            Err(Error::FieldEscape(_))
        ));
    }

    #[test]
    fn interpolation_hits_the_tuple_and_translates_outside() {
        let from = vec![q(-1, 1), q(0, 1), q(2, 1)];
        let to = vec![q(0, 1), q(1, 2), q(3, 1)];
        let f = interpolate(&from, &to).unwrap();
        for (a, b) in from.iter().zip(to.iter()) {
            assert_eq!(f.apply(a), *b);
        }
        assert_eq!(f.germ_neg(), (q(1, 1), q(1, 1)));
        assert_eq!(f.germ_pos(), (q(1, 1), q(1, 1)));
        assert!(f.pieces().iter().all(MoebiusMap::is_affine));
        assert!(interpolate(&from, &to[..2]).is_err());
        assert!(interpolate(&[q(0, 1), q(0, 1)], &[q(0, 1), q(1, 1)]).is_err());
    }

    #[test]
    fn agrees_on_restriction() {
        let z = discrete_example();
        let w = PiecewiseProjMap::translation(q(1, 1));
        assert!(z.agrees_on(&w, &EndPoint::NegInf, &EndPoint::Finite(q(0, 1))));
        assert!(z.agrees_on(&w, &EndPoint::Finite(q(1, 1)), &EndPoint::PosInf));
        assert!(!z.agrees_on(&w, &EndPoint::NegInf, &EndPoint::Finite(q(1, 2))));
    }
}
