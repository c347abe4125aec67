use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::rational::{rat, rat_from, Rational};
use super::NumericError;

/// A real algebraic number: a square-free defining polynomial together with
/// a rational bracket containing exactly one of its real roots.
///
/// Rational values collapse to the degenerate bracket `[r, r]` with defining
/// polynomial `x - r`. For non-degenerate brackets the endpoints are never
/// roots, so bisection always sees a sign change.
#[derive(Clone)]
pub struct AlgebraicReal {
    poly: Poly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        let poly = Poly::new(vec![-r.clone(), rat_from(1)]);
        AlgebraicReal {
            poly,
            lo: r.clone(),
            hi: r,
        }
    }

    /// Builds from a square-free polynomial and a bracket already known to
    /// isolate a single root with non-root endpoints.
    fn from_bracket(poly: Poly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(!poly.eval(&lo).is_zero() && !poly.eval(&hi).is_zero());
        AlgebraicReal { poly, lo, hi }
    }

    pub fn defining_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn bracket(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.lo)
        } else {
            None
        }
    }

    /// Halves the bracket, collapsing to a rational point when the midpoint
    /// happens to be the root.
    pub fn refine(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat_from(2);
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            *self = AlgebraicReal::from_rational(mid);
            return;
        }
        if self.poly.sign_at(&self.lo) * sm < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_below(&mut self, width: &Rational) {
        while !self.is_rational() && &(&self.hi - &self.lo) >= width {
            self.refine();
        }
    }

    /// Total order on the represented real numbers. Equality is decided with
    /// a square-free gcd plus a common-bracket root count, never numerically.
    pub fn cmp_alg(&self, other: &AlgebraicReal) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(b);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        // Rational vs interval: decide by evaluating the other polynomial.
        if let Some(r) = a.as_rational() {
            if b.poly.eval(r).is_zero() && b.lo < *r && *r < b.hi {
                return Ordering::Equal;
            }
        }
        if let Some(r) = b.as_rational() {
            if a.poly.eval(r).is_zero() && a.lo < *r && *r < a.hi {
                return Ordering::Equal;
            }
        }
        // Genuine intervals overlapping: a shared root must be a root of the
        // gcd inside the overlap.
        if !a.is_rational() && !b.is_rational() && a.lo < b.hi && b.lo < a.hi {
            let g = a.poly.gcd(&b.poly);
            if !g.is_constant() {
                let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
                let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
                if count_roots_closed(&g, &lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
        }
        // Provably distinct: refine until the brackets separate. Endpoints of
        // non-degenerate brackets are never roots, so a shared endpoint still
        // implies strict order.
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
            if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
                return x.cmp(y);
            }
        }
    }

    /// Sign of the represented number: -1, 0, 1.
    pub fn sign(&self) -> i32 {
        match self.cmp_alg(&AlgebraicReal::from_rational(rat_from(0))) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// A rational point strictly between two distinct algebraic numbers.
    pub fn rational_between(a: &AlgebraicReal, b: &AlgebraicReal) -> Rational {
        debug_assert_eq!(a.cmp_alg(b), Ordering::Less);
        let mut a = a.clone();
        let mut b = b.clone();
        loop {
            if a.hi < b.lo {
                return (&a.hi + &b.lo) / rat_from(2);
            }
            if a.is_rational() && b.is_rational() {
                return (&a.lo + &b.lo) / rat_from(2);
            }
            a.refine();
            b.refine();
        }
    }

    /// Rational lower/upper bounds of the current bracket.
    pub fn lo_bound(&self) -> &Rational {
        &self.lo
    }

    pub fn hi_bound(&self) -> &Rational {
        &self.hi
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            write!(f, "Alg({})", r)
        } else {
            write!(f, "Alg({} in [{}, {}])", self.poly, self.lo, self.hi)
        }
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_alg(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_alg(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_alg(other)
    }
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct roots of a square-free `p` in the open interval
/// `(a, b)`; endpoints must not be roots.
fn count_roots_open(chain: &[Poly], p: &Poly, a: &Rational, b: &Rational) -> usize {
    debug_assert!(!p.eval(a).is_zero() && !p.eval(b).is_zero());
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Number of distinct real roots of any nonzero `p` in the closed interval
/// `[a, b]` (endpoints allowed to be roots). Used by the equality test.
pub(crate) fn count_roots_closed(p: &Poly, a: &Rational, b: &Rational) -> usize {
    if a > b {
        return 0;
    }
    let mut q = p.square_free_part();
    let mut extra = 0;
    if q.eval(a).is_zero() {
        extra += 1;
        q = q.deflate(a);
    }
    if a != b && q.eval(b).is_zero() {
        extra += 1;
        q = q.deflate(b);
    }
    if q.is_constant() || a == b {
        return extra;
    }
    let chain = sturm_chain(&q);
    extra + count_roots_open(&chain, &q, a, b)
}

/// Total root count of `p` inside a rational window, by a single Sturm-chain
/// evaluation at the window endpoints. Exposed for cross-checks against the
/// bisection-based isolation.
pub fn sturm_count_in_window(p: &Poly, lo: &Rational, hi: &Rational) -> usize {
    count_roots_closed(p, lo, hi)
}

/// Isolates every real root of `p` inside the closed window `[lo, hi]`,
/// returning them in ascending order with pairwise disjoint brackets.
pub fn isolate_real_roots(
    p: &Poly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<AlgebraicReal>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    if lo > hi {
        return Ok(Vec::new());
    }
    let mut q = p.square_free_part();
    let mut roots: Vec<AlgebraicReal> = Vec::new();

    // Rational roots at the window endpoints are deflated away so the Sturm
    // counts below always see non-root endpoints.
    if q.eval(lo).is_zero() {
        roots.push(AlgebraicReal::from_rational(lo.clone()));
        q = q.deflate(lo);
    }
    if hi != lo && q.eval(hi).is_zero() {
        roots.push(AlgebraicReal::from_rational(hi.clone()));
        q = q.deflate(hi);
    }
    if !q.is_constant() && lo < hi {
        isolate_rec(&mut q, lo.clone(), hi.clone(), &mut roots);
    }
    roots.sort();
    separate_brackets(&mut roots);
    Ok(roots)
}

fn isolate_rec(q: &mut Poly, lo: Rational, hi: Rational, out: &mut Vec<AlgebraicReal>) {
    let chain = sturm_chain(q);
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = count_roots_open(&chain, q, &a, &b);
        match n {
            0 => {}
            1 => out.push(AlgebraicReal::from_bracket(q.clone(), a, b)),
            _ => {
                let mid = (&a + &b) / rat_from(2);
                if q.eval(&mid).is_zero() {
                    out.push(AlgebraicReal::from_rational(mid.clone()));
                    *q = q.deflate(&mid);
                    // Chain is stale; restart on both halves with the
                    // deflated polynomial.
                    if !q.is_constant() {
                        isolate_rec(q, a, mid.clone(), out);
                        isolate_rec(q, mid, b, out);
                    }
                    return;
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
}

/// Adjacent brackets coming out of bisection share endpoints; shrink until
/// the closed brackets are pairwise disjoint.
fn separate_brackets(roots: &mut [AlgebraicReal]) {
    for i in 1..roots.len() {
        loop {
            let left_hi = roots[i - 1].hi.clone();
            let right_lo = roots[i].lo.clone();
            if left_hi < right_lo {
                break;
            }
            if !roots[i - 1].is_rational() {
                roots[i - 1].refine();
            }
            if !roots[i].is_rational() {
                roots[i].refine();
            }
            if roots[i - 1].is_rational() && roots[i].is_rational() {
                break;
            }
        }
    }
}

/// An interval with algebraic endpoints and open/closed flags; the spans a
/// sign classification runs over. A degenerate span (`lo == hi`) must be
/// closed on both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgSpan {
    pub lo: AlgebraicReal,
    pub hi: AlgebraicReal,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl AlgSpan {
    pub fn new(lo: AlgebraicReal, hi: AlgebraicReal, lo_closed: bool, hi_closed: bool) -> Self {
        let span = AlgSpan {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        debug_assert!(!span.is_empty(), "empty span");
        span
    }

    pub fn point(x: AlgebraicReal) -> Self {
        AlgSpan {
            lo: x.clone(),
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn is_empty(&self) -> bool {
        match self.lo.cmp_alg(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    pub fn contains(&self, x: &AlgebraicReal) -> bool {
        let lo = x.cmp_alg(&self.lo);
        let hi = x.cmp_alg(&self.hi);
        let lo_ok = lo == Ordering::Greater || (lo == Ordering::Equal && self.lo_closed);
        let hi_ok = hi == Ordering::Less || (hi == Ordering::Equal && self.hi_closed);
        lo_ok && hi_ok
    }
}

/// Sign behavior of a polynomial over a span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignSummary {
    /// The zero polynomial: vanishes everywhere on the span.
    IdenticallyZero,
    AllPositive,
    AllNegative,
    /// Zeros occur but the sign never crosses; the polynomial is
    /// semidefinite on the span.
    HasZero {
        roots: Vec<AlgebraicReal>,
        positive_elsewhere: bool,
    },
    /// Genuine sign changes; all roots in the span listed in order.
    MixedWithZeros(Vec<AlgebraicReal>),
}

/// Classifies the sign of `p` over `span`, listing contained roots.
pub fn poly_sign_summary(p: &Poly, span: &AlgSpan) -> SignSummary {
    if p.is_zero() {
        return SignSummary::IdenticallyZero;
    }
    if span.is_point() {
        let s = sign_at_algebraic(p, &span.lo);
        return match s {
            0 => SignSummary::HasZero {
                roots: vec![span.lo.clone()],
                positive_elsewhere: false,
            },
            1 => SignSummary::AllPositive,
            _ => SignSummary::AllNegative,
        };
    }
    // Window generously covering the span.
    let wlo = span.lo.lo_bound().clone() - rat(1, 1);
    let whi = span.hi.hi_bound().clone() + rat(1, 1);
    let all = isolate_real_roots(p, &wlo, &whi).expect("nonzero polynomial");
    let roots: Vec<AlgebraicReal> = all.into_iter().filter(|r| span.contains(r)).collect();

    // Sign samples on each maximal root-free stretch.
    let mut stops: Vec<AlgebraicReal> = Vec::new();
    stops.push(span.lo.clone());
    stops.extend(roots.iter().cloned());
    stops.push(span.hi.clone());
    let mut pos = false;
    let mut neg = false;
    for w in stops.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let x = AlgebraicReal::rational_between(&w[0], &w[1]);
        match p.sign_at(&x) {
            1 => pos = true,
            -1 => neg = true,
            _ => unreachable!("sample point cannot be a root"),
        }
    }
    // Open endpoints that are roots sit outside the span but do not affect
    // interior signs; closed endpoints that are roots were kept above.
    match (pos, neg, roots.is_empty()) {
        (true, false, true) => SignSummary::AllPositive,
        (false, true, true) => SignSummary::AllNegative,
        (true, false, false) => SignSummary::HasZero {
            roots,
            positive_elsewhere: true,
        },
        (false, true, false) => SignSummary::HasZero {
            roots,
            positive_elsewhere: false,
        },
        (true, true, _) => SignSummary::MixedWithZeros(roots),
        (false, false, _) => {
            // No root-free stretch sampled: the span is squeezed between
            // roots; classify as semidefinite zero cluster.
            SignSummary::HasZero {
                roots,
                positive_elsewhere: false,
            }
        }
    }
}

/// Exact sign of `p` at an algebraic point.
pub(crate) fn sign_at_algebraic(p: &Poly, x: &AlgebraicReal) -> i32 {
    if let Some(r) = x.as_rational() {
        return p.sign_at(r);
    }
    if p.is_zero() {
        return 0;
    }
    // Zero iff the defining polynomials share x as a root.
    let g = p.gcd(x.defining_poly());
    if !g.is_constant() && count_roots_closed(&g, x.lo_bound(), x.hi_bound()) > 0 {
        return 0;
    }
    // Nonzero: shrink x's bracket until p has no roots inside, then sample.
    let mut x = x.clone();
    loop {
        if count_roots_closed(p, x.lo_bound(), x.hi_bound()) == 0 {
            return p.sign_at(x.lo_bound());
        }
        x.refine();
        if let Some(r) = x.as_rational() {
            return p.sign_at(r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rat_from(c)).collect())
    }

    fn pr(coeffs: &[(i64, i64)]) -> Poly {
        Poly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn isolates_forced_rational_root() {
        // x^2 - 1/4 on [0, 1] -> exactly 1/2
        let roots = isolate_real_roots(&pr(&[(-1, 4), (0, 1), (1, 1)]), &rat_from(0), &rat_from(1))
            .unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0], AlgebraicReal::from_rational(rat(1, 2)));
    }

    #[test]
    fn no_real_roots() {
        // x^2 + 1 on [-10, 10]
        let roots = isolate_real_roots(&p(&[1, 0, 1]), &rat_from(-10), &rat_from(10)).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn cubic_with_sqrt2_roots() {
        // x^3 - 2x on [-2, 2] -> -sqrt2, 0, sqrt2
        let roots = isolate_real_roots(&p(&[0, -2, 0, 1]), &rat_from(-2), &rat_from(2)).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], AlgebraicReal::from_rational(rat_from(0)));
        assert_eq!(roots[0].sign(), -1);
        assert_eq!(roots[2].sign(), 1);
        // brackets pairwise disjoint and ordered
        assert!(roots[0].hi_bound() < roots[1].lo_bound());
        assert!(roots[1].hi_bound() < roots[2].lo_bound());
        // sqrt2 is in (1.4, 1.5)
        let mut s = roots[2].clone();
        s.refine_below(&rat(1, 100));
        assert!(s.lo_bound() >= &rat(14, 10) && s.hi_bound() <= &rat(15, 10));
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            isolate_real_roots(&Poly::zero(), &rat_from(0), &rat_from(1)),
            Err(NumericError::ZeroPolynomial)
        );
    }

    #[test]
    fn compare_sqrt2_and_rational() {
        let sqrt2 = isolate_real_roots(&p(&[-2, 0, 1]), &rat_from(0), &rat_from(2))
            .unwrap()
            .remove(0);
        let three_halves = AlgebraicReal::from_rational(rat(3, 2));
        assert_eq!(sqrt2.cmp_alg(&three_halves), Ordering::Less);
    }

    #[test]
    fn compare_equal_roots_of_different_polys() {
        // sqrt2 as root of x^2-2 and as root of x^4-4 isolated in [1,2]
        let a = isolate_real_roots(&p(&[-2, 0, 1]), &rat_from(1), &rat_from(2))
            .unwrap()
            .remove(0);
        let b = isolate_real_roots(&p(&[-4, 0, 0, 0, 1]), &rat_from(1), &rat_from(2))
            .unwrap()
            .remove(0);
        assert_eq!(a.cmp_alg(&b), Ordering::Equal);

        // refinement never changes comparisons
        let mut b2 = b.clone();
        b2.refine_below(&rat(1, 1_000_000));
        assert_eq!(a.cmp_alg(&b2), Ordering::Equal);
    }

    #[test]
    fn zero_equals_zero() {
        let z = AlgebraicReal::from_rational(rat_from(0));
        assert_eq!(z.cmp_alg(&z.clone()), Ordering::Equal);
    }

    #[test]
    fn sign_summary_cases() {
        let span = AlgSpan::new(
            AlgebraicReal::from_rational(rat_from(0)),
            AlgebraicReal::from_rational(rat_from(1)),
            true,
            true,
        );
        assert_eq!(
            poly_sign_summary(&p(&[2]), &span),
            SignSummary::AllPositive
        );
        // x - 1/2: crosses
        match poly_sign_summary(&pr(&[(-1, 2), (1, 1)]), &span) {
            SignSummary::MixedWithZeros(roots) => {
                assert_eq!(roots, vec![AlgebraicReal::from_rational(rat(1, 2))]);
            }
            other => panic!("expected mixed, got {:?}", other),
        }
        // (x - 1/3)^2: touches zero, nonnegative
        let sq = &pr(&[(-1, 3), (1, 1)]) * &pr(&[(-1, 3), (1, 1)]);
        match poly_sign_summary(&sq, &span) {
            SignSummary::HasZero {
                roots,
                positive_elsewhere,
            } => {
                assert!(positive_elsewhere);
                assert_eq!(roots, vec![AlgebraicReal::from_rational(rat(1, 3))]);
            }
            other => panic!("expected HasZero, got {:?}", other),
        }
    }

    #[test]
    fn sign_summary_open_endpoint_excludes_root() {
        // x on (0, 1]: strictly positive
        let span = AlgSpan::new(
            AlgebraicReal::from_rational(rat_from(0)),
            AlgebraicReal::from_rational(rat_from(1)),
            false,
            true,
        );
        assert_eq!(poly_sign_summary(&p(&[0, 1]), &span), SignSummary::AllPositive);
    }

    #[test]
    fn sturm_window_count_matches() {
        let f = &p(&[0, -2, 0, 1]) * &p(&[-1, 1]); // roots -sqrt2, 0, 1, sqrt2
        assert_eq!(sturm_count_in_window(&f, &rat_from(-2), &rat_from(2)), 4);
        assert_eq!(sturm_count_in_window(&f, &rat_from(0), &rat_from(2)), 3);
        assert_eq!(
            sturm_count_in_window(&f, &rat(1, 10), &rat(9, 10)),
            0
        );
    }
}
