//! The ring of bounded piecewise functions on an interval, restricted to a
//! decidable fragment: polynomial pieces over rational breakpoints, extended
//! by a symbolic bounded oscillator primitive.
//!
//! Oscillators are never evaluated numerically. Each primitive declares its
//! anchor, an amplitude bound, its value at the anchor, and rational root
//! families accumulating at the anchor; all downstream reasoning (zero sets,
//! unit certificates, limits) consumes only that declared data. Sums and
//! products that would leave the fragment return `OutsideFragment` instead of
//! guessing.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::numeric::{
    isolate_real_roots, poly_sign_summary, rat, rat_from, AlgSpan, AlgebraicReal, Poly, Rational,
    SignSummary,
};
use crate::zeroset::{component_count, zero_set, AccumFamily, ComponentCount, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PieceError {
    #[error("functions live on different domains")]
    DomainMismatch,
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("piece is unbounded on its subinterval")]
    UnboundedPiece,
    #[error("operation leaves the decidable fragment: {0}")]
    OutsideFragment(String),
    #[error("point outside the domain")]
    OutOfDomain,
    #[error("derivative requires polynomial pieces only")]
    NotDifferentiableFragment,
}

/// A connected domain with nonempty interior. An open end plays the role of
/// an end at infinity: bounded functions on `(0,1)` are the standard model of
/// bounded functions on the real line, so the at-infinity ideal blocks of an
/// unbounded domain appear here as blocks anchored at an open endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Domain {
    pub fn new(
        lo: Rational,
        hi: Rational,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Result<Self, PieceError> {
        if lo >= hi {
            return Err(PieceError::MalformedPartition(
                "domain needs nonempty interior".into(),
            ));
        }
        Ok(Domain {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Domain::new(lo, hi, true, true).expect("closed domain")
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = x > &self.lo || (x == &self.lo && self.lo_closed);
        let hi_ok = x < &self.hi || (x == &self.hi && self.hi_closed);
        lo_ok && hi_ok
    }

    pub fn contains_alg(&self, x: &AlgebraicReal) -> bool {
        use std::cmp::Ordering::*;
        let lo = AlgebraicReal::from_rational(self.lo.clone());
        let hi = AlgebraicReal::from_rational(self.hi.clone());
        let lo_ok = match x.cmp_alg(&lo) {
            Greater => true,
            Equal => self.lo_closed,
            Less => false,
        };
        let hi_ok = match x.cmp_alg(&hi) {
            Less => true,
            Equal => self.hi_closed,
            Greater => false,
        };
        lo_ok && hi_ok
    }

    pub fn interior_contains(&self, x: &Rational) -> bool {
        x > &self.lo && x < &self.hi
    }

    pub fn closure_contains(&self, x: &Rational) -> bool {
        x >= &self.lo && x <= &self.hi
    }

    /// Can `x` be approached from `side` while staying in the domain?
    pub fn approachable(&self, x: &Rational, side: Side) -> bool {
        if !self.closure_contains(x) {
            return false;
        }
        match side {
            Side::Left => x > &self.lo,
            Side::Right => x < &self.hi,
        }
    }

    /// Anchors at an open end stand for blocks at infinity.
    pub fn is_open_end(&self, x: &Rational) -> bool {
        (x == &self.lo && !self.lo_closed) || (x == &self.hi && !self.hi_closed)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { "[" } else { "(" },
            self.lo,
            self.hi,
            if self.hi_closed { "]" } else { ")" },
        )
    }
}

/// A symbolic bounded oscillator: continuous off its anchor, bounded by
/// `amplitude`, with no one-sided limits at the anchor, vanishing exactly on
/// the declared root families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscPrimitive {
    anchor: Rational,
    left: Option<AccumFamily>,
    right: Option<AccumFamily>,
    amplitude: Rational,
    anchor_value: Rational,
}

impl OscPrimitive {
    pub fn new(
        anchor: Rational,
        left: Option<AccumFamily>,
        right: Option<AccumFamily>,
        amplitude: Rational,
        anchor_value: Rational,
    ) -> Result<Self, PieceError> {
        if !amplitude.is_positive() {
            return Err(PieceError::MalformedPartition(
                "oscillator amplitude must be positive".into(),
            ));
        }
        if left.is_none() && right.is_none() {
            return Err(PieceError::MalformedPartition(
                "oscillator needs a root family on at least one side".into(),
            ));
        }
        for (fam, side) in [(&left, Side::Left), (&right, Side::Right)] {
            if let Some(f) = fam {
                if f.anchor() != &anchor || f.side() != side {
                    return Err(PieceError::MalformedPartition(
                        "oscillator family must accumulate at the anchor from its side".into(),
                    ));
                }
            }
        }
        if anchor_value.abs() > amplitude {
            return Err(PieceError::MalformedPartition(
                "anchor value exceeds the amplitude bound".into(),
            ));
        }
        Ok(OscPrimitive {
            anchor,
            left,
            right,
            amplitude,
            anchor_value,
        })
    }

    pub fn anchor(&self) -> &Rational {
        &self.anchor
    }

    pub fn amplitude(&self) -> &Rational {
        &self.amplitude
    }

    pub fn anchor_value(&self) -> &Rational {
        &self.anchor_value
    }

    pub fn family(&self, side: Side) -> Option<&AccumFamily> {
        match side {
            Side::Left => self.left.as_ref(),
            Side::Right => self.right.as_ref(),
        }
    }
}

/// Expression of one piece. `Osc` is `scale * osc + shift`; `OscSquare` is
/// `(scale * osc + shift)^2`, the one product of oscillator terms the
/// fragment admits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceExpr {
    Poly(Poly),
    Osc {
        scale: Rational,
        osc: OscPrimitive,
        shift: Rational,
    },
    OscSquare {
        scale: Rational,
        osc: OscPrimitive,
        shift: Rational,
    },
}

impl PieceExpr {
    pub fn is_poly(&self) -> bool {
        matches!(self, PieceExpr::Poly(_))
    }

    fn osc_anchor(&self) -> Option<&Rational> {
        match self {
            PieceExpr::Poly(_) => None,
            PieceExpr::Osc { osc, .. } | PieceExpr::OscSquare { osc, .. } => Some(osc.anchor()),
        }
    }
}

/// Zero families of `scale*osc + shift` on one side of the anchor, derived
/// from the primitive's family parameters. A shift strictly inside the
/// amplitude band yields two interleaved families; touching the band yields a
/// single tangential family; beyond the band there are no zeros.
pub(crate) fn osc_zero_families(
    scale: &Rational,
    osc: &OscPrimitive,
    shift: &Rational,
    side: Side,
) -> Vec<AccumFamily> {
    let base = match osc.family(side) {
        Some(f) => f,
        None => return Vec::new(),
    };
    let band = scale.abs() * &osc.amplitude;
    let h = shift.abs();
    if h.is_zero() {
        return vec![base.clone()];
    }
    if h < band {
        let t = shift / &band; // in (-1, 1), nonzero
        let q1 = (rat_from(1) + &t) / rat_from(4);
        let q2 = (rat_from(3) - &t) / rat_from(4);
        let mk = |q: Rational| {
            AccumFamily::new(
                base.anchor().clone(),
                side,
                base.c().clone(),
                base.r() + q,
                base.k_min() as i64,
            )
        };
        return vec![mk(q1), mk(q2)];
    }
    if h == band {
        return vec![AccumFamily::new(
            base.anchor().clone(),
            side,
            base.c().clone(),
            base.r() + rat(1, 2),
            base.k_min() as i64,
        )
        .tangential()];
    }
    Vec::new()
}

/// All zero families of an oscillator piece expression.
pub(crate) fn expr_zero_families(expr: &PieceExpr) -> Vec<AccumFamily> {
    match expr {
        PieceExpr::Poly(_) => Vec::new(),
        PieceExpr::Osc { scale, osc, shift } => {
            let mut out = osc_zero_families(scale, osc, shift, Side::Left);
            out.extend(osc_zero_families(scale, osc, shift, Side::Right));
            out
        }
        PieceExpr::OscSquare { scale, osc, shift } => {
            let mut out = osc_zero_families(scale, osc, shift, Side::Left);
            out.extend(osc_zero_families(scale, osc, shift, Side::Right));
            out.into_iter().map(|f| f.tangential()).collect()
        }
    }
}

/// Value of an exact evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rat(Rational),
    /// The point lies strictly inside an oscillator piece at a generic
    /// (non-root, non-anchor) point; the fragment does not evaluate there.
    SymbolicOsc,
}

impl Value {
    pub fn rational(self) -> Option<Rational> {
        match self {
            Value::Rat(r) => Some(r),
            Value::SymbolicOsc => None,
        }
    }
}

/// One-sided limit outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideLimit {
    Value(Rational),
    /// Approaching an oscillator anchor: no limit exists.
    Oscillates,
    /// Approaching an oscillator piece away from its anchor: the limit exists
    /// but the fragment holds no numeric value for it.
    Symbolic,
    /// Unreachable in this fragment (pieces are bounded by construction);
    /// kept so callers can match exhaustively over the full contract.
    Unbounded,
}

/// Why a function fails to be a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitObstruction {
    /// The function vanishes at this point.
    ZeroAt(AlgebraicReal),
    /// The one-sided limit at this point is zero while nearby values are not.
    SideLimitZero { at: Rational, side: Side },
    /// An oscillator piece's value band reaches zero; a concrete vanishing
    /// member is named.
    OscRangeCrossesZero {
        anchor: Rational,
        side: Side,
        member: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitVerdict {
    /// Certified uniform lower bound: |f| >= eps everywhere on the domain.
    Unit(Rational),
    NotUnit(UnitObstruction),
}

impl UnitVerdict {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitVerdict::Unit(_))
    }
}

/// A bounded piecewise function: polynomial or oscillator expressions on the
/// open subintervals between breakpoints, with explicit rational values at
/// each breakpoint. Closed domain endpoints take the adjacent piece's value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFn {
    domain: Domain,
    cuts: Vec<Rational>,
    pieces: Vec<PieceExpr>,
    values: Vec<Rational>,
}

/// One open cell of the partition plus the endpoint-inclusion flags induced
/// by closed domain ends.
pub struct Cell<'a> {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_in: bool,
    pub hi_in: bool,
    pub expr: &'a PieceExpr,
}

impl PiecewiseFn {
    pub fn build(
        domain: Domain,
        cuts: Vec<Rational>,
        pieces: Vec<PieceExpr>,
        values: Vec<Rational>,
    ) -> Result<Self, PieceError> {
        if pieces.len() != cuts.len() + 1 {
            return Err(PieceError::MalformedPartition(format!(
                "{} pieces for {} cuts",
                pieces.len(),
                cuts.len()
            )));
        }
        if values.len() != cuts.len() {
            return Err(PieceError::MalformedPartition(format!(
                "{} point values for {} cuts",
                values.len(),
                cuts.len()
            )));
        }
        for w in cuts.windows(2) {
            if w[0] >= w[1] {
                return Err(PieceError::MalformedPartition(
                    "breakpoints must be strictly ascending".into(),
                ));
            }
        }
        for c in &cuts {
            if !domain.interior_contains(c) {
                return Err(PieceError::MalformedPartition(
                    "breakpoints must be interior to the domain".into(),
                ));
            }
        }
        let f = PiecewiseFn {
            domain,
            cuts,
            pieces,
            values,
        };
        // Oscillator adjacency: the anchor must lie in the piece's closure,
        // and a piece reaching a closed domain end must be anchored there
        // (otherwise the endpoint value would be symbolic).
        for cell in f.cells() {
            if let Some(anchor) = cell.expr.osc_anchor() {
                if anchor < &cell.lo || anchor > &cell.hi {
                    return Err(PieceError::MalformedPartition(
                        "oscillator piece must touch its anchor".into(),
                    ));
                }
                if (cell.lo_in && anchor != &cell.lo) && cell.lo == *f.domain.lo() {
                    return Err(PieceError::MalformedPartition(
                        "oscillator piece at a closed end must anchor there".into(),
                    ));
                }
                if (cell.hi_in && anchor != &cell.hi) && cell.hi == *f.domain.hi() {
                    return Err(PieceError::MalformedPartition(
                        "oscillator piece at a closed end must anchor there".into(),
                    ));
                }
            }
        }
        Ok(f.normalized())
    }

    pub fn from_poly(domain: Domain, p: Poly) -> Self {
        PiecewiseFn {
            domain,
            cuts: Vec::new(),
            pieces: vec![PieceExpr::Poly(p)],
            values: Vec::new(),
        }
    }

    pub fn constant(domain: Domain, c: Rational) -> Self {
        Self::from_poly(domain, Poly::constant(c))
    }

    pub fn zero(domain: Domain) -> Self {
        Self::constant(domain, rat_from(0))
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(domain, rat_from(1))
    }

    pub fn identity(domain: Domain) -> Self {
        Self::from_poly(domain, Poly::x())
    }

    /// The standard oscillator function anchored at `anchor` with root
    /// families `anchor -/+ c/(k+r)` on whichever sides the domain admits,
    /// amplitude bound `amplitude` and value `anchor_value` at the anchor.
    pub fn oscillator(
        domain: Domain,
        anchor: Rational,
        c: Rational,
        r: Rational,
        amplitude: Rational,
        anchor_value: Rational,
    ) -> Result<Self, PieceError> {
        if !domain.closure_contains(&anchor) {
            return Err(PieceError::OutOfDomain);
        }
        let mk_family = |side: Side, bound: &Rational| -> Option<AccumFamily> {
            // smallest k with the member strictly inside the domain
            let gap = (&anchor - bound).abs();
            if gap.is_zero() {
                return None;
            }
            let f = AccumFamily::new(anchor.clone(), side, c.clone(), r.clone(), 1);
            let t = f.c() / gap - f.r();
            let k_min = t.floor().to_integer() + 1;
            let k_min: i64 = k_min.try_into().ok()?;
            Some(AccumFamily::new(
                anchor.clone(),
                side,
                c.clone(),
                r.clone(),
                k_min.max(1),
            ))
        };
        let left = if domain.approachable(&anchor, Side::Left) {
            mk_family(Side::Left, domain.lo())
        } else {
            None
        };
        let right = if domain.approachable(&anchor, Side::Right) {
            mk_family(Side::Right, domain.hi())
        } else {
            None
        };
        let osc = OscPrimitive::new(anchor.clone(), left, right, amplitude, anchor_value.clone())?;
        let expr = PieceExpr::Osc {
            scale: rat_from(1),
            osc,
            shift: rat_from(0),
        };
        if domain.interior_contains(&anchor) {
            PiecewiseFn::build(
                domain,
                vec![anchor],
                vec![expr.clone(), expr],
                vec![anchor_value],
            )
        } else {
            PiecewiseFn::build(domain, vec![], vec![expr], vec![])
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn pieces(&self) -> &[PieceExpr] {
        &self.pieces
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn cells(&self) -> Vec<Cell<'_>> {
        let mut out = Vec::with_capacity(self.pieces.len());
        for (i, expr) in self.pieces.iter().enumerate() {
            let lo = if i == 0 {
                self.domain.lo().clone()
            } else {
                self.cuts[i - 1].clone()
            };
            let hi = if i == self.cuts.len() {
                self.domain.hi().clone()
            } else {
                self.cuts[i].clone()
            };
            out.push(Cell {
                lo_in: i == 0 && self.domain.lo_closed(),
                hi_in: i == self.cuts.len() && self.domain.hi_closed(),
                lo,
                hi,
                expr,
            });
        }
        out
    }

    pub fn has_oscillator(&self) -> bool {
        self.pieces.iter().any(|p| !p.is_poly())
    }

    pub fn is_zero_fn(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| matches!(p, PieceExpr::Poly(q) if q.is_zero()))
            && self.values.iter().all(|v| v.is_zero())
    }

    /// Natural value of an expression at a point of its closure, when the
    /// fragment knows one.
    fn expr_value_at(expr: &PieceExpr, x: &Rational) -> Value {
        match expr {
            PieceExpr::Poly(p) => Value::Rat(p.eval(x)),
            PieceExpr::Osc { scale, osc, shift } => {
                if x == osc.anchor() {
                    return Value::Rat(scale * osc.anchor_value() + shift);
                }
                for side in [Side::Left, Side::Right] {
                    if let Some(f) = osc.family(side) {
                        if f.contains(x) {
                            return Value::Rat(shift.clone());
                        }
                    }
                    for f in osc_zero_families(scale, osc, shift, side) {
                        if f.contains(x) {
                            return Value::Rat(rat_from(0));
                        }
                    }
                }
                Value::SymbolicOsc
            }
            PieceExpr::OscSquare { scale, osc, shift } => {
                let base = PieceExpr::Osc {
                    scale: scale.clone(),
                    osc: osc.clone(),
                    shift: shift.clone(),
                };
                match Self::expr_value_at(&base, x) {
                    Value::Rat(v) => Value::Rat(&v * &v),
                    Value::SymbolicOsc => Value::SymbolicOsc,
                }
            }
        }
    }

    /// Exact evaluation at a domain point.
    pub fn eval(&self, x: &Rational) -> Result<Value, PieceError> {
        if !self.domain.contains(x) {
            return Err(PieceError::OutOfDomain);
        }
        for (i, c) in self.cuts.iter().enumerate() {
            if x == c {
                return Ok(Value::Rat(self.values[i].clone()));
            }
        }
        // find the covering piece
        let mut idx = 0;
        for (i, c) in self.cuts.iter().enumerate() {
            if x > c {
                idx = i + 1;
            }
        }
        Ok(Self::expr_value_at(&self.pieces[idx], x))
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        self.eval(x).ok().and_then(Value::rational)
    }

    /// One-sided limit at a point of the domain closure.
    pub fn side_limit(&self, x: &Rational, side: Side) -> Result<SideLimit, PieceError> {
        if !self.domain.approachable(x, side) {
            return Err(PieceError::OutOfDomain);
        }
        // the piece adjacent to x on the requested side
        let mut idx = 0usize;
        for (i, c) in self.cuts.iter().enumerate() {
            let past = match side {
                Side::Left => x > c,
                Side::Right => x >= c,
            };
            if past {
                idx = i + 1;
            }
        }
        Ok(match &self.pieces[idx] {
            PieceExpr::Poly(p) => SideLimit::Value(p.eval(x)),
            PieceExpr::Osc { osc, .. } | PieceExpr::OscSquare { osc, .. } => {
                if x == osc.anchor() {
                    SideLimit::Oscillates
                } else {
                    SideLimit::Symbolic
                }
            }
        })
    }

    /// Drops breakpoints that separate identical expressions and carry the
    /// expression's own value, so structural equality is function equality.
    fn normalized(mut self) -> Self {
        let mut i = 0;
        while i < self.cuts.len() {
            let removable = self.pieces[i] == self.pieces[i + 1]
                && match Self::expr_value_at(&self.pieces[i], &self.cuts[i]) {
                    Value::Rat(v) => v == self.values[i],
                    Value::SymbolicOsc => false,
                };
            if removable {
                self.cuts.remove(i);
                self.values.remove(i);
                self.pieces.remove(i + 1);
            } else {
                i += 1;
            }
        }
        self
    }

    fn combine(
        &self,
        other: &PiecewiseFn,
        add_mode: bool,
    ) -> Result<PiecewiseFn, PieceError> {
        if self.domain != other.domain {
            return Err(PieceError::DomainMismatch);
        }
        let mut cuts: Vec<Rational> = self.cuts.clone();
        for c in &other.cuts {
            if !cuts.contains(c) {
                cuts.push(c.clone());
            }
        }
        cuts.sort();
        let mut values = Vec::with_capacity(cuts.len());
        for c in &cuts {
            let a = self.eval(c)?.rational();
            let b = other.eval(c)?.rational();
            match (a, b) {
                (Some(a), Some(b)) => values.push(if add_mode { a + b } else { a * b }),
                _ => {
                    return Err(PieceError::OutsideFragment(
                        "breakpoint lands on a symbolic oscillator value".into(),
                    ))
                }
            }
        }
        let mut pieces = Vec::with_capacity(cuts.len() + 1);
        for i in 0..=cuts.len() {
            let lo = if i == 0 { self.domain.lo() } else { &cuts[i - 1] };
            let hi = if i == cuts.len() {
                self.domain.hi()
            } else {
                &cuts[i]
            };
            let probe = (lo + hi) / rat_from(2);
            let ea = self.piece_at(&probe);
            let eb = other.piece_at(&probe);
            let combined = if add_mode {
                add_exprs(ea, eb)?
            } else {
                mul_exprs(ea, eb)?
            };
            pieces.push(combined);
        }
        Ok(PiecewiseFn {
            domain: self.domain.clone(),
            cuts,
            pieces,
            values,
        }
        .normalized())
    }

    fn piece_at(&self, x: &Rational) -> &PieceExpr {
        let mut idx = 0;
        for (i, c) in self.cuts.iter().enumerate() {
            if x > c {
                idx = i + 1;
            }
        }
        &self.pieces[idx]
    }

    /// Pointwise sum on the merged partition.
    pub fn add(&self, other: &PiecewiseFn) -> Result<PiecewiseFn, PieceError> {
        self.combine(other, true)
    }

    /// Pointwise product on the merged partition.
    pub fn mul(&self, other: &PiecewiseFn) -> Result<PiecewiseFn, PieceError> {
        self.combine(other, false)
    }

    pub fn neg(&self) -> Result<PiecewiseFn, PieceError> {
        let minus_one = PiecewiseFn::constant(self.domain.clone(), rat_from(-1));
        self.mul(&minus_one)
    }

    pub fn sub(&self, other: &PiecewiseFn) -> Result<PiecewiseFn, PieceError> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, s: &Rational) -> Result<PiecewiseFn, PieceError> {
        self.mul(&PiecewiseFn::constant(self.domain.clone(), s.clone()))
    }

    pub fn add_const(&self, s: &Rational) -> Result<PiecewiseFn, PieceError> {
        self.add(&PiecewiseFn::constant(self.domain.clone(), s.clone()))
    }

    /// The averaged one-sided derivative: the formal derivative on each
    /// piece, with the value at every breakpoint set to the mean of the two
    /// adjacent piece-derivative limits (a single one-sided derivative at the
    /// domain boundary).
    pub fn derivative(&self) -> Result<PiecewiseFn, PieceError> {
        let mut dp = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            match p {
                PieceExpr::Poly(q) => dp.push(q.derivative()),
                _ => return Err(PieceError::NotDifferentiableFragment),
            }
        }
        let mut values = Vec::with_capacity(self.cuts.len());
        for (i, c) in self.cuts.iter().enumerate() {
            let left = dp[i].eval(c);
            let right = dp[i + 1].eval(c);
            values.push((left + right) / rat_from(2));
        }
        Ok(PiecewiseFn {
            domain: self.domain.clone(),
            cuts: self.cuts.clone(),
            pieces: dp.into_iter().map(PieceExpr::Poly).collect(),
            values,
        }
        .normalized())
    }

    /// Exact unit test with a certified uniform lower bound on success.
    pub fn is_unit(&self) -> UnitVerdict {
        let mut eps: Option<Rational> = None;
        let mut push_eps = |e: Rational| {
            if eps.as_ref().map_or(true, |cur| &e < cur) {
                eps = Some(e);
            }
        };
        // breakpoint values
        for (c, v) in self.cuts.iter().zip(&self.values) {
            if v.is_zero() {
                return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(
                    AlgebraicReal::from_rational(c.clone()),
                ));
            }
            push_eps(v.abs());
        }
        for cell in self.cells() {
            match cell.expr {
                PieceExpr::Poly(p) => {
                    if p.is_zero() {
                        let mid = (&cell.lo + &cell.hi) / rat_from(2);
                        return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(
                            AlgebraicReal::from_rational(mid),
                        ));
                    }
                    let span = AlgSpan::new(
                        AlgebraicReal::from_rational(cell.lo.clone()),
                        AlgebraicReal::from_rational(cell.hi.clone()),
                        true,
                        true,
                    );
                    match poly_sign_summary(p, &span) {
                        SignSummary::IdenticallyZero => unreachable!(),
                        SignSummary::AllPositive | SignSummary::AllNegative => {
                            push_eps(min_abs_bound(p, &span));
                        }
                        SignSummary::HasZero { roots, .. }
                        | SignSummary::MixedWithZeros(roots) => {
                            let root = &roots[0];
                            // inside the open cell -> a genuine zero; at an
                            // excluded endpoint -> a one-sided vanishing limit
                            let lo_a = AlgebraicReal::from_rational(cell.lo.clone());
                            let hi_a = AlgebraicReal::from_rational(cell.hi.clone());
                            for root in &roots {
                                if *root == lo_a {
                                    if cell.lo_in {
                                        return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(
                                            root.clone(),
                                        ));
                                    }
                                    return UnitVerdict::NotUnit(
                                        UnitObstruction::SideLimitZero {
                                            at: cell.lo.clone(),
                                            side: Side::Right,
                                        },
                                    );
                                } else if *root == hi_a {
                                    if cell.hi_in {
                                        return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(
                                            root.clone(),
                                        ));
                                    }
                                    return UnitVerdict::NotUnit(
                                        UnitObstruction::SideLimitZero {
                                            at: cell.hi.clone(),
                                            side: Side::Left,
                                        },
                                    );
                                }
                            }
                            return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(root.clone()));
                        }
                    }
                }
                PieceExpr::Osc { scale, osc, shift }
                | PieceExpr::OscSquare { scale, osc, shift } => {
                    let band = scale.abs() * osc.amplitude();
                    let h = shift.abs();
                    if h <= band {
                        // the band reaches zero: name a vanishing member
                        let side = if osc.anchor() > &cell.lo {
                            Side::Left
                        } else {
                            Side::Right
                        };
                        let fams = osc_zero_families(scale, osc, shift, side);
                        let member = fams
                            .first()
                            .map(|f| f.first_member())
                            .unwrap_or_else(|| osc.anchor().clone());
                        return UnitVerdict::NotUnit(UnitObstruction::OscRangeCrossesZero {
                            anchor: osc.anchor().clone(),
                            side,
                            member,
                        });
                    }
                    let gap = &h - &band;
                    let e = if matches!(cell.expr, PieceExpr::OscSquare { .. }) {
                        &gap * &gap
                    } else {
                        gap
                    };
                    push_eps(e);
                    // anchor value when the anchor sits inside the cell
                    if let Value::Rat(v) = Self::expr_value_at(cell.expr, osc.anchor()) {
                        if cell.lo < *osc.anchor() && *osc.anchor() < cell.hi
                            || (cell.lo_in && osc.anchor() == &cell.lo)
                            || (cell.hi_in && osc.anchor() == &cell.hi)
                        {
                            if v.is_zero() {
                                return UnitVerdict::NotUnit(UnitObstruction::ZeroAt(
                                    AlgebraicReal::from_rational(osc.anchor().clone()),
                                ));
                            }
                            push_eps(v.abs());
                        }
                    }
                }
            }
        }
        UnitVerdict::Unit(eps.unwrap_or_else(|| rat_from(1)))
    }

    /// True iff f*f = f, i.e. every piece is constant 0 or 1 and every
    /// breakpoint value is 0 or 1.
    pub fn is_idempotent(&self) -> bool {
        let zero_or_one =
            |v: &Rational| v.is_zero() || v == &rat_from(1);
        self.pieces.iter().all(|p| match p {
            PieceExpr::Poly(q) => q.as_constant().map_or(false, |c| zero_or_one(&c)),
            _ => false,
        }) && self.values.iter().all(zero_or_one)
    }

    /// Membership of the fragment all of whose derivatives have zero sets
    /// with finitely many components: exactly the polynomial-piece fragment.
    /// Decided by iterating the derivative to the zero function, checking the
    /// component count at every stage.
    pub fn in_f(&self) -> bool {
        if self.has_oscillator() {
            return false;
        }
        let mut g = self.clone();
        loop {
            match component_count(&zero_set(&g)) {
                ComponentCount::Finite(_) => {}
                ComponentCount::Infinite => return false,
            }
            if g.is_zero_fn() {
                return true;
            }
            g = g.derivative().expect("polynomial fragment");
        }
    }
}

/// Rational lower bound for |p| over a span on which p has constant sign,
/// found by halving: the largest eps = 2^-j with p^2 - eps^2 >= 0 on the span.
fn min_abs_bound(p: &Poly, span: &AlgSpan) -> Rational {
    if let Some(c) = p.as_constant() {
        return c.abs();
    }
    let mut eps = rat_from(1);
    loop {
        let q = &(p * p) - &Poly::constant(&eps * &eps);
        match poly_sign_summary(&q, span) {
            SignSummary::AllPositive
            | SignSummary::HasZero {
                positive_elsewhere: true,
                ..
            } => return eps,
            _ => {
                eps = eps / rat_from(2);
            }
        }
    }
}

fn add_exprs(a: &PieceExpr, b: &PieceExpr) -> Result<PieceExpr, PieceError> {
    use PieceExpr::*;
    match (a, b) {
        (Poly(p), Poly(q)) => Ok(Poly(p + q)),
        (Poly(p), Osc { scale, osc, shift }) | (Osc { scale, osc, shift }, Poly(p)) => {
            match p.as_constant() {
                Some(c) => Ok(Osc {
                    scale: scale.clone(),
                    osc: osc.clone(),
                    shift: shift + c,
                }),
                None => Err(PieceError::OutsideFragment(
                    "oscillator plus non-constant polynomial".into(),
                )),
            }
        }
        (
            Osc {
                scale: s1,
                osc: o1,
                shift: h1,
            },
            Osc {
                scale: s2,
                osc: o2,
                shift: h2,
            },
        ) => {
            if o1 == o2 {
                let scale = s1 + s2;
                let shift = h1 + h2;
                if scale.is_zero() {
                    Ok(Poly(crate::numeric::Poly::constant(shift)))
                } else {
                    Ok(Osc {
                        scale,
                        osc: o1.clone(),
                        shift,
                    })
                }
            } else {
                Err(PieceError::OutsideFragment(
                    "sum of distinct oscillator primitives".into(),
                ))
            }
        }
        (OscSquare { .. }, Poly(p)) | (Poly(p), OscSquare { .. })
            if p.as_constant().map_or(false, |c| c.is_zero()) =>
        {
            Ok(if let OscSquare { scale, osc, shift } = a {
                OscSquare {
                    scale: scale.clone(),
                    osc: osc.clone(),
                    shift: shift.clone(),
                }
            } else if let OscSquare { scale, osc, shift } = b {
                OscSquare {
                    scale: scale.clone(),
                    osc: osc.clone(),
                    shift: shift.clone(),
                }
            } else {
                unreachable!()
            })
        }
        _ => Err(PieceError::OutsideFragment(
            "sum involving a squared oscillator".into(),
        )),
    }
}

fn mul_exprs(a: &PieceExpr, b: &PieceExpr) -> Result<PieceExpr, PieceError> {
    use PieceExpr::*;
    match (a, b) {
        (Poly(p), Poly(q)) => Ok(Poly(p * q)),
        (Poly(p), Osc { scale, osc, shift }) | (Osc { scale, osc, shift }, Poly(p)) => {
            match p.as_constant() {
                Some(c) if c.is_zero() => Ok(Poly(crate::numeric::Poly::zero())),
                Some(c) => Ok(Osc {
                    scale: scale * &c,
                    osc: osc.clone(),
                    shift: shift * &c,
                }),
                None => Err(PieceError::OutsideFragment(
                    "oscillator times non-constant polynomial".into(),
                )),
            }
        }
        (
            Osc {
                scale: s1,
                osc: o1,
                shift: h1,
            },
            Osc {
                scale: s2,
                osc: o2,
                shift: h2,
            },
        ) => {
            if o1 == o2 && s1 == s2 && h1 == h2 {
                Ok(OscSquare {
                    scale: s1.clone(),
                    osc: o1.clone(),
                    shift: h1.clone(),
                })
            } else {
                Err(PieceError::OutsideFragment(
                    "product of oscillator terms other than a square".into(),
                ))
            }
        }
        (OscSquare { .. }, Poly(p)) | (Poly(p), OscSquare { .. }) => match p.as_constant() {
            Some(c) if c.is_zero() => Ok(Poly(crate::numeric::Poly::zero())),
            Some(c) if c == rat_from(1) => Ok(if matches!(a, OscSquare { .. }) {
                a.clone()
            } else {
                b.clone()
            }),
            _ => Err(PieceError::OutsideFragment(
                "scaling a squared oscillator".into(),
            )),
        },
        _ => Err(PieceError::OutsideFragment(
            "product involving a squared oscillator".into(),
        )),
    }
}

/// Outcome of a clean decomposition attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CleanOutcome {
    /// f = e + u with e idempotent and u a unit, all exact.
    Decomposed { e: PiecewiseFn, u: PiecewiseFn },
    NotClean(NotCleanCert),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCleanCert {
    /// An oscillator band reaches both 0 and 1 on an anchor-adjacent side:
    /// neither e = 0 nor e = 1 near the anchor leaves f - e a unit, and no
    /// idempotent can cut inside the accumulation.
    OscBandSpansZeroAndOne {
        anchor: Rational,
        f_zero_member: Rational,
        f_minus_one_zero_member: Rational,
    },
    /// In the continuous subring the only idempotents are 0 and 1; both
    /// residuals fail to be units.
    ContinuousObstruction {
        f_obstruction: UnitObstruction,
        f_minus_one_obstruction: UnitObstruction,
    },
}

impl PiecewiseFn {
    /// Clean decomposition within the full (jump-admitting) ring: constructs
    /// an indicator idempotent whose blocks cover neighborhoods of the zeros
    /// of f and avoid those of f - 1, with cuts drawn from the breakpoints,
    /// the (bracket-separated) roots of f and f - 1, and rational separators
    /// between consecutive such points.
    pub fn clean_decompose(&self) -> Result<CleanOutcome, PieceError> {
        // Oscillator cells force a constant e nearby; if the band reaches
        // both 0 and 1 no choice works.
        let mut forced: Vec<Option<Rational>> = Vec::new();
        for cell in self.cells() {
            match cell.expr {
                PieceExpr::Poly(_) => forced.push(None),
                PieceExpr::Osc { scale, osc, shift }
                | PieceExpr::OscSquare { scale, osc, shift } => {
                    let sq = matches!(cell.expr, PieceExpr::OscSquare { .. });
                    let (range_lo, range_hi) = osc_range(scale, osc, shift, sq);
                    let zero = rat_from(0);
                    let one = rat_from(1);
                    let hits_zero = range_lo <= zero && zero <= range_hi;
                    let hits_one = range_lo <= one && one <= range_hi;
                    if hits_zero && hits_one {
                        let side = if osc.anchor() > &cell.lo {
                            Side::Left
                        } else {
                            Side::Right
                        };
                        let z0 = osc_zero_families(scale, osc, shift, side)
                            .first()
                            .map(|f| f.first_member())
                            .unwrap_or_else(|| osc.anchor().clone());
                        let shift1 = shift - &one;
                        let z1 = osc_zero_families(scale, osc, &shift1, side)
                            .first()
                            .map(|f| f.first_member())
                            .unwrap_or_else(|| osc.anchor().clone());
                        return Ok(CleanOutcome::NotClean(
                            NotCleanCert::OscBandSpansZeroAndOne {
                                anchor: osc.anchor().clone(),
                                f_zero_member: z0,
                                f_minus_one_zero_member: z1,
                            },
                        ));
                    }
                    forced.push(Some(if hits_zero { rat_from(1) } else { rat_from(0) }));
                }
            }
        }

        // Polynomial cells: find special points (roots of f and f-1 in the
        // cell closure) and separate them by rational cuts.
        #[derive(Clone, Copy, PartialEq)]
        enum Kind {
            OfF,
            OfFMinusOne,
        }
        let one_poly = Poly::one();
        let mut e_cuts: Vec<Rational> = self.cuts.to_vec();
        let mut segment_values: Vec<(Rational, Rational, Rational)> = Vec::new(); // (lo, hi, e)
        for (ci, cell) in self.cells().iter().enumerate() {
            let e_const = match cell.expr {
                PieceExpr::Poly(p) => {
                    if p.is_zero() {
                        Some(rat_from(1))
                    } else if *p == one_poly {
                        Some(rat_from(0))
                    } else {
                        None
                    }
                }
                _ => forced[ci].clone(),
            };
            if let Some(v) = e_const {
                segment_values.push((cell.lo.clone(), cell.hi.clone(), v));
                continue;
            }
            let p = match cell.expr {
                PieceExpr::Poly(p) => p,
                _ => unreachable!(),
            };
            let mut specials: Vec<(AlgebraicReal, Kind)> = Vec::new();
            for r in isolate_real_roots(p, &cell.lo, &cell.hi).expect("nonzero piece") {
                specials.push((r, Kind::OfF));
            }
            let pm1 = p - &one_poly;
            if !pm1.is_zero() {
                for r in isolate_real_roots(&pm1, &cell.lo, &cell.hi).expect("nonzero") {
                    specials.push((r, Kind::OfFMinusOne));
                }
            } else {
                // f == 1 identically: handled above
                unreachable!();
            }
            specials.sort_by(|a, b| a.0.cmp_alg(&b.0));
            if specials.is_empty() {
                segment_values.push((cell.lo.clone(), cell.hi.clone(), rat_from(0)));
                continue;
            }
            // rational separators between consecutive specials of different kind
            let mut seps: Vec<Rational> = Vec::new();
            for w in specials.windows(2) {
                if w[0].1 != w[1].1 {
                    seps.push(AlgebraicReal::rational_between(&w[0].0, &w[1].0));
                }
            }
            // assignment per segment: 1 near zeros of f, 0 near zeros of f-1
            let mut seg_lo = cell.lo.clone();
            let mut si = 0usize;
            let mut spec_idx = 0usize;
            loop {
                let seg_hi = if si < seps.len() {
                    seps[si].clone()
                } else {
                    cell.hi.clone()
                };
                // kind of specials inside [seg_lo, seg_hi]
                let lo_a = AlgebraicReal::from_rational(seg_lo.clone());
                let hi_a = AlgebraicReal::from_rational(seg_hi.clone());
                let mut kind: Option<Kind> = None;
                while spec_idx < specials.len() {
                    let (pt, k) = &specials[spec_idx];
                    if pt.cmp_alg(&lo_a) != std::cmp::Ordering::Less
                        && pt.cmp_alg(&hi_a) != std::cmp::Ordering::Greater
                    {
                        kind = Some(*k);
                        spec_idx += 1;
                    } else {
                        break;
                    }
                }
                let e_val = match kind {
                    Some(Kind::OfF) => rat_from(1),
                    Some(Kind::OfFMinusOne) | None => rat_from(0),
                };
                segment_values.push((seg_lo.clone(), seg_hi.clone(), e_val));
                if si >= seps.len() {
                    break;
                }
                e_cuts.push(seps[si].clone());
                seg_lo = seg_hi;
                si += 1;
            }
        }
        e_cuts.sort();
        e_cuts.dedup();
        // assemble e
        let mut e_pieces: Vec<PieceExpr> = Vec::new();
        let mut e_values: Vec<Rational> = Vec::new();
        for i in 0..=e_cuts.len() {
            let lo = if i == 0 {
                self.domain.lo().clone()
            } else {
                e_cuts[i - 1].clone()
            };
            let hi = if i == e_cuts.len() {
                self.domain.hi().clone()
            } else {
                e_cuts[i].clone()
            };
            let probe = (&lo + &hi) / rat_from(2);
            let v = segment_values
                .iter()
                .find(|(a, b, _)| a <= &probe && &probe <= b)
                .map(|(_, _, v)| v.clone())
                .unwrap_or_else(|| rat_from(0));
            e_pieces.push(PieceExpr::Poly(Poly::constant(v)));
        }
        for c in &e_cuts {
            let fv = self
                .eval(c)?
                .rational()
                .expect("cuts land on rational values");
            let ev = if fv.is_zero() { rat_from(1) } else { rat_from(0) };
            e_values.push(ev);
        }
        let e = PiecewiseFn::build(self.domain.clone(), e_cuts, e_pieces, e_values)?;
        let u = self.sub(&e)?;
        Ok(CleanOutcome::Decomposed { e, u })
    }

    /// Clean decomposition inside the continuous subring, where the only
    /// idempotents are the constants 0 and 1.
    pub fn clean_decompose_continuous(&self) -> Result<CleanOutcome, PieceError> {
        if !self.cuts.is_empty() || self.has_oscillator() {
            return Err(PieceError::OutsideFragment(
                "not in the continuous subring".into(),
            ));
        }
        match self.is_unit() {
            UnitVerdict::Unit(_) => {
                let e = PiecewiseFn::zero(self.domain.clone());
                Ok(CleanOutcome::Decomposed {
                    e,
                    u: self.clone(),
                })
            }
            UnitVerdict::NotUnit(obs_f) => {
                let fm1 = self.sub(&PiecewiseFn::one(self.domain.clone()))?;
                match fm1.is_unit() {
                    UnitVerdict::Unit(_) => Ok(CleanOutcome::Decomposed {
                        e: PiecewiseFn::one(self.domain.clone()),
                        u: fm1,
                    }),
                    UnitVerdict::NotUnit(obs_fm1) => {
                        Ok(CleanOutcome::NotClean(NotCleanCert::ContinuousObstruction {
                            f_obstruction: obs_f,
                            f_minus_one_obstruction: obs_fm1,
                        }))
                    }
                }
            }
        }
    }
}

/// Exact value band of an oscillator expression.
fn osc_range(
    scale: &Rational,
    osc: &OscPrimitive,
    shift: &Rational,
    squared: bool,
) -> (Rational, Rational) {
    let band = scale.abs() * osc.amplitude();
    let lo = shift - &band;
    let hi = shift + &band;
    if !squared {
        (lo, hi)
    } else if lo.is_negative() && hi.is_positive() {
        let m = lo.abs().max(hi.abs());
        (rat_from(0), &m * &m)
    } else {
        let a = &lo * &lo;
        let b = &hi * &hi;
        (a.clone().min(b.clone()), a.max(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom() -> Domain {
        Domain::closed(rat_from(0), rat_from(1))
    }

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// The step h: 0 on [0, 1/2), 1 on [1/2, 1].
    pub(crate) fn step_at_half() -> PiecewiseFn {
        PiecewiseFn::build(
            dom(),
            vec![rat(1, 2)],
            vec![
                PieceExpr::Poly(Poly::zero()),
                PieceExpr::Poly(Poly::constant(rat_from(1))),
            ],
            vec![rat_from(1)],
        )
        .unwrap()
    }

    /// phi_{1/2}: zero everywhere except value 1 at 1/2.
    pub(crate) fn phi_half() -> PiecewiseFn {
        PiecewiseFn::build(
            dom(),
            vec![rat(1, 2)],
            vec![
                PieceExpr::Poly(Poly::zero()),
                PieceExpr::Poly(Poly::zero()),
            ],
            vec![rat_from(1)],
        )
        .unwrap()
    }

    fn osc_half() -> PiecewiseFn {
        PiecewiseFn::oscillator(
            dom(),
            rat(1, 2),
            rat_from(1),
            rat_from(0),
            rat_from(1),
            rat_from(1),
        )
        .unwrap()
    }

    #[test]
    fn build_step_and_eval() {
        let h = step_at_half();
        assert_eq!(h.eval(&rat(1, 4)).unwrap(), Value::Rat(rat_from(0)));
        assert_eq!(h.eval(&rat(1, 2)).unwrap(), Value::Rat(rat_from(1)));
        assert_eq!(h.eval(&rat(3, 4)).unwrap(), Value::Rat(rat_from(1)));
    }

    #[test]
    fn build_identity_no_cuts() {
        let f = PiecewiseFn::identity(dom());
        assert_eq!(f.eval(&rat(1, 3)).unwrap(), Value::Rat(rat(1, 3)));
        assert!(f.cuts().is_empty());
    }

    #[test]
    fn build_phi() {
        let phi = phi_half();
        assert_eq!(phi.eval(&rat(1, 2)).unwrap(), Value::Rat(rat_from(1)));
        assert_eq!(phi.eval(&rat(1, 4)).unwrap(), Value::Rat(rat_from(0)));
    }

    #[test]
    fn build_rejects_malformed() {
        assert!(matches!(
            PiecewiseFn::build(
                dom(),
                vec![rat(1, 2), rat(1, 4)],
                vec![
                    PieceExpr::Poly(Poly::zero()),
                    PieceExpr::Poly(Poly::zero()),
                    PieceExpr::Poly(Poly::zero())
                ],
                vec![rat_from(0), rat_from(0)],
            ),
            Err(PieceError::MalformedPartition(_))
        ));
        assert!(matches!(
            PiecewiseFn::build(dom(), vec![rat(1, 2)], vec![], vec![]),
            Err(PieceError::MalformedPartition(_))
        ));
    }

    #[test]
    fn add_linear_pieces() {
        let d = dom();
        let x = PiecewiseFn::identity(d.clone());
        let one_minus_x = PiecewiseFn::from_poly(d.clone(), poly(&[(1, 1), (-1, 1)]));
        let sum = x.add(&one_minus_x).unwrap();
        assert_eq!(sum, PiecewiseFn::one(d));
    }

    #[test]
    fn osc_plus_constant_folds_into_shift() {
        let f = osc_half();
        let g = f.add_const(&rat_from(2)).unwrap();
        // no zeros anywhere: amplitude 1 with shift 2
        assert!(matches!(g.is_unit(), UnitVerdict::Unit(e) if e == rat_from(1)));
        assert_eq!(g.eval(&rat(1, 2)).unwrap(), Value::Rat(rat_from(3)));
    }

    #[test]
    fn distinct_oscillators_do_not_add() {
        let d = dom();
        let f = PiecewiseFn::oscillator(
            d.clone(),
            rat(1, 2),
            rat_from(1),
            rat_from(0),
            rat_from(1),
            rat_from(1),
        )
        .unwrap();
        let g = PiecewiseFn::oscillator(
            d,
            rat(1, 2),
            rat_from(2),
            rat_from(0),
            rat_from(1),
            rat_from(1),
        )
        .unwrap();
        assert!(matches!(
            f.add(&g),
            Err(PieceError::OutsideFragment(_))
        ));
    }

    #[test]
    fn phi_complement_product_is_zero() {
        let d = dom();
        let phi = phi_half();
        let compl = PiecewiseFn::one(d.clone()).sub(&phi).unwrap();
        let prod = phi.mul(&compl).unwrap();
        assert!(prod.is_zero_fn());
    }

    #[test]
    fn osc_square_zero_set_is_both_families() {
        let f = osc_half();
        let sq = f.mul(&f).unwrap();
        let zs = zero_set(&sq);
        assert_eq!(zs.families().len(), 2);
        assert!(zs.families().iter().all(|fam| fam.tangential));
        // nonnegative: unit test cannot find a negative band
        match sq.is_unit() {
            UnitVerdict::NotUnit(UnitObstruction::OscRangeCrossesZero { .. }) => {}
            other => panic!("expected band obstruction, got {:?}", other),
        }
    }

    #[test]
    fn eval_osc_points() {
        let f = osc_half();
        // anchor value
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), Value::Rat(rat_from(1)));
        // family member k=3 on the left: 1/2 - 1/3 = 1/6
        assert_eq!(f.eval(&rat(1, 6)).unwrap(), Value::Rat(rat_from(0)));
        // generic point: symbolic
        assert_eq!(f.eval(&rat(1, 5)).unwrap(), Value::SymbolicOsc);
    }

    #[test]
    fn side_limits() {
        let h = step_at_half();
        assert_eq!(
            h.side_limit(&rat(1, 2), Side::Left).unwrap(),
            SideLimit::Value(rat_from(0))
        );
        assert_eq!(
            h.side_limit(&rat(1, 2), Side::Right).unwrap(),
            SideLimit::Value(rat_from(1))
        );
        let f = osc_half();
        assert_eq!(
            f.side_limit(&rat(1, 2), Side::Left).unwrap(),
            SideLimit::Oscillates
        );
        // (x - 1/2)^2 from the left at 1/2
        let g = PiecewiseFn::from_poly(dom(), &poly(&[(-1, 2), (1, 1)]) * &poly(&[(-1, 2), (1, 1)]));
        assert_eq!(
            g.side_limit(&rat(1, 2), Side::Left).unwrap(),
            SideLimit::Value(rat_from(0))
        );
    }

    #[test]
    fn derivative_examples() {
        let d = dom();
        // x^2 -> 2x with boundary values 0, 2 via the piece itself
        let f = PiecewiseFn::from_poly(d.clone(), poly(&[(0, 1), (0, 1), (1, 1)]));
        let df = f.derivative().unwrap();
        assert_eq!(df, PiecewiseFn::from_poly(d.clone(), poly(&[(0, 1), (2, 1)])));

        // step: derivative is the zero function (averaged jump value 0)
        let h = step_at_half();
        assert!(h.derivative().unwrap().is_zero_fn());

        // |x - 1/2| as two linear pieces: -1 / +1 with value 0 at the kink
        let abs = PiecewiseFn::build(
            d,
            vec![rat(1, 2)],
            vec![
                PieceExpr::Poly(poly(&[(1, 2), (-1, 1)])),
                PieceExpr::Poly(poly(&[(-1, 2), (1, 1)])),
            ],
            vec![rat_from(0)],
        )
        .unwrap();
        let dabs = abs.derivative().unwrap();
        assert_eq!(dabs.eval(&rat(1, 4)).unwrap(), Value::Rat(rat_from(-1)));
        assert_eq!(dabs.eval(&rat(3, 4)).unwrap(), Value::Rat(rat_from(1)));
        assert_eq!(dabs.eval(&rat(1, 2)).unwrap(), Value::Rat(rat_from(0)));
    }

    #[test]
    fn unit_certificates() {
        let d = dom();
        assert_eq!(
            PiecewiseFn::constant(d.clone(), rat_from(2)).is_unit(),
            UnitVerdict::Unit(rat_from(2))
        );
        // phi is not a unit: vanishes off 1/2
        match phi_half().is_unit() {
            UnitVerdict::NotUnit(UnitObstruction::ZeroAt(x)) => {
                assert!(x.as_rational().is_some());
            }
            other => panic!("expected zero witness, got {:?}", other),
        }
        // osc + 2 with amplitude 1: unit with bound 1
        let g = osc_half().add_const(&rat_from(2)).unwrap();
        assert_eq!(g.is_unit(), UnitVerdict::Unit(rat_from(1)));
        // limit-zero obstruction: (x-1/2)^2 with value 1 at 1/2
        let sq = &poly(&[(-1, 2), (1, 1)]) * &poly(&[(-1, 2), (1, 1)]);
        let f = PiecewiseFn::build(
            d,
            vec![rat(1, 2)],
            vec![PieceExpr::Poly(sq.clone()), PieceExpr::Poly(sq)],
            vec![rat_from(1)],
        )
        .unwrap();
        match f.is_unit() {
            UnitVerdict::NotUnit(UnitObstruction::SideLimitZero { at, .. }) => {
                assert_eq!(at, rat(1, 2));
            }
            other => panic!("expected side-limit obstruction, got {:?}", other),
        }
    }

    #[test]
    fn idempotents() {
        assert!(phi_half().is_idempotent());
        assert!(step_at_half().is_idempotent());
        assert!(!PiecewiseFn::identity(dom()).is_idempotent());
        let phi = phi_half();
        assert_eq!(phi.mul(&phi).unwrap(), phi);
    }

    #[test]
    fn clean_decompose_identity_function() {
        let f = PiecewiseFn::identity(dom());
        match f.clean_decompose().unwrap() {
            CleanOutcome::Decomposed { e, u } => {
                assert!(e.is_idempotent());
                assert!(u.is_unit().is_unit());
                assert_eq!(e.add(&u).unwrap(), f);
                // e is the indicator of a left block
                assert_eq!(e.eval(&rat(1, 100)).unwrap(), Value::Rat(rat_from(1)));
                assert_eq!(e.eval(&rat(99, 100)).unwrap(), Value::Rat(rat_from(0)));
            }
            other => panic!("expected decomposition, got {:?}", other),
        }
    }

    #[test]
    fn clean_decompose_phi() {
        let phi = phi_half();
        match phi.clean_decompose().unwrap() {
            CleanOutcome::Decomposed { e, u } => {
                assert!(e.is_idempotent());
                assert!(u.is_unit().is_unit());
                assert_eq!(e.add(&u).unwrap(), phi);
            }
            other => panic!("expected decomposition, got {:?}", other),
        }
    }

    #[test]
    fn clean_decompose_osc_not_clean() {
        let f = osc_half();
        match f.clean_decompose().unwrap() {
            CleanOutcome::NotClean(NotCleanCert::OscBandSpansZeroAndOne {
                anchor, ..
            }) => {
                assert_eq!(anchor, rat(1, 2));
            }
            other => panic!("expected osc certificate, got {:?}", other),
        }
    }

    #[test]
    fn clean_continuous_subring() {
        // x on [0,1]: not clean within C0
        let f = PiecewiseFn::identity(dom());
        match f.clean_decompose_continuous().unwrap() {
            CleanOutcome::NotClean(NotCleanCert::ContinuousObstruction { .. }) => {}
            other => panic!("expected continuous obstruction, got {:?}", other),
        }
        // x + 1 is a unit: decomposes trivially
        let g = PiecewiseFn::from_poly(dom(), poly(&[(1, 1), (1, 1)]));
        assert!(matches!(
            g.clean_decompose_continuous().unwrap(),
            CleanOutcome::Decomposed { .. }
        ));
    }

    #[test]
    fn f_membership() {
        assert!(PiecewiseFn::identity(dom()).in_f());
        assert!(step_at_half().in_f());
        assert!(!osc_half().in_f());
    }

    #[test]
    fn normalization_merges_redundant_cut() {
        let d = dom();
        let f = PiecewiseFn::build(
            d.clone(),
            vec![rat(1, 2)],
            vec![
                PieceExpr::Poly(Poly::x()),
                PieceExpr::Poly(Poly::x()),
            ],
            vec![rat(1, 2)],
        )
        .unwrap();
        assert_eq!(f, PiecewiseFn::identity(d));
    }
}
