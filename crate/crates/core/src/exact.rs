//! Exact polynomial arithmetic over the integers and rationals.
//!
//! Two consumers: the `f64` Sturm kernel falls back to [`IntSturm`] when a
//! floating remainder sequence degenerates, and the shattering checks for
//! large `T` run entirely on [`RatPoly`] because the shattered plans are not
//! representable in `f64` there.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact value of a finite `f64`.
pub fn rat_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Dense polynomial with integer coefficients, ascending degree; empty means zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    fn neg(mut self) -> IntPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }

    /// Divides out the positive content; the sign of every value is preserved.
    pub fn primitive(mut self) -> IntPoly {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c = &*c / &g;
            }
        }
        self
    }

    /// Sign of the value at `x`, from the homogenized form `sum c_k p^k q^(d-k)` with `q > 0`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let p = x.numer();
        let q = x.denom();
        let mut qpow = BigInt::one();
        let mut acc = self.coeffs[d].clone();
        for k in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[k] * &qpow;
        }
        sign_of(&acc)
    }

    /// Pseudo-division: returns `(quotient, remainder, lc(b)^(deg a - deg b + 1))`
    /// with `lc(b)^e * a = quotient * b + remainder`.
    fn pseudo_divmod(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly, BigInt) {
        let db = b.degree().expect("division by zero polynomial");
        let Some(da) = a.degree() else {
            return (IntPoly::new(vec![]), IntPoly::new(vec![]), BigInt::one());
        };
        if da < db {
            return (IntPoly::new(vec![]), a.clone(), BigInt::one());
        }
        let lb = b.lc().clone();
        let mut r = a.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        let mut e = da - db + 1;
        let mut top = da;
        loop {
            // r has degree <= top; eliminate coefficient `top`.
            let lr = r[top].clone();
            for c in q.iter_mut() {
                *c *= &lb;
            }
            for c in r.iter_mut() {
                *c *= &lb;
            }
            q[top - db] += &lr;
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[top - db + j] -= &lr * bj;
            }
            e -= 1;
            if top == db {
                break;
            }
            top -= 1;
        }
        // Remaining scale so that the multiplier is exactly lc(b)^(da - db + 1).
        let scale = num_traits::pow(lb.clone(), e);
        if !scale.is_one() {
            for c in q.iter_mut().chain(r.iter_mut()) {
                *c *= &scale;
            }
        }
        (
            IntPoly::new(q),
            IntPoly::new(r),
            num_traits::pow(lb, da - db + 1),
        )
    }

    /// Squarefree part, primitive, with the sign of the original leading coefficient.
    pub fn squarefree(&self) -> IntPoly {
        if self.degree().unwrap_or(0) < 2 {
            return self.clone().primitive();
        }
        let g = int_gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.clone().primitive();
        }
        let (q, _, _) = IntPoly::pseudo_divmod(self, &g);
        let q = q.primitive();
        if sign_of(q.lc()) != sign_of(self.lc()) {
            q.neg()
        } else {
            q
        }
    }
}

fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut x = a.clone().primitive();
    let mut y = b.clone().primitive();
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let (_, r, _) = IntPoly::pseudo_divmod(&x, &y);
        x = y;
        y = r.primitive();
    }
    x.primitive()
}

/// Sturm chain of the squarefree part of an integer polynomial.
#[derive(Debug, Clone)]
pub struct IntSturm {
    chain: Vec<IntPoly>,
}

impl IntSturm {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone()];
        if p0.degree() == Some(0) {
            return Ok(IntSturm { chain });
        }
        chain.push(p0.derivative().primitive());
        loop {
            let n = chain.len();
            let (_, r, mult) = IntPoly::pseudo_divmod(&chain[n - 2], &chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // -rem(a, b) up to a positive factor.
            let next = if mult.is_negative() { r } else { r.neg() };
            let next = next.primitive();
            let done = next.degree() == Some(0);
            chain.push(next);
            if done {
                break;
            }
        }
        Ok(IntSturm { chain })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in self.chain.iter().map(|p| p.sign_at(x)) {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Dense polynomial with rational coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn from_f64(p: &crate::Polynomial) -> Result<Self> {
        Ok(RatPoly::new(
            p.coeffs().iter().map(|&c| rat_from_f64(c)).collect::<Result<_>>()?,
        ))
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        RatPoly { coeffs: c }
    }

    pub fn from_roots(roots: &[Rational], scale: &Rational) -> Result<Self> {
        if scale.is_zero() {
            return domain("from_roots: scale must be nonzero");
        }
        let mut c = vec![scale.clone()];
        for r in roots {
            let mut next = vec![Rational::zero(); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Ok(RatPoly::new(c))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &RatPoly, k: &Rational) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, Rational::zero());
        for (ci, oi) in c.iter_mut().zip(&other.coeffs) {
            *ci += oi * k;
        }
        RatPoly::new(c)
    }

    /// Positive multiple with integer coefficients (same sign everywhere).
    pub fn to_int_poly(&self) -> IntPoly {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
        .primitive()
    }

    pub fn to_f64(&self) -> crate::Polynomial {
        crate::Polynomial::new(self.coeffs.iter().map(rat_to_f64).collect())
    }
}

/// Solves `sum_t f_t Q_t = P` exactly over the rationals.
///
/// The basis must consist of `T` polynomials of degree at most `T - 1` that
/// span that space.
pub fn span_solve_exact(basis: &[RatPoly], target: &RatPoly) -> Result<Vec<Rational>> {
    let t = basis.len();
    if t == 0 {
        return domain("span_solve: empty basis");
    }
    if basis.iter().any(|q| q.degree().is_some_and(|d| d >= t)) || target.degree().is_some_and(|d| d >= t) {
        return domain("span_solve: degrees must be at most T - 1");
    }
    let get = |p: &RatPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
    // Row k: coefficient of delta^k. Column j: basis j; last column: target.
    let mut m: Vec<Vec<Rational>> = (0..t)
        .map(|k| {
            let mut row: Vec<Rational> = basis.iter().map(|q| get(q, k)).collect();
            row.push(get(target, k));
            row
        })
        .collect();
    for col in 0..t {
        let piv = (col..t)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularBasis { condition: f64::INFINITY })?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &f * p;
            }
        }
    }
    Ok(m.into_iter().map(|row| row[t].clone()).collect())
}

/// Location of one root of one member of a polynomial family.
#[derive(Debug, Clone)]
enum RootItem {
    /// Exact root.
    Point(Rational),
    /// Open interval with rational, non-root endpoints holding exactly one root.
    Open(Rational, Rational),
}

impl RootItem {
    fn lo(&self) -> &Rational {
        match self {
            RootItem::Point(p) => p,
            RootItem::Open(l, _) => l,
        }
    }
    fn hi(&self) -> &Rational {
        match self {
            RootItem::Point(p) => p,
            RootItem::Open(_, h) => h,
        }
    }
}

/// One sign vector realized on `(a, b)` together with where it occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedVector {
    pub signs: Vec<u8>,
    /// Parameter value producing `signs`; exact unless `exact_witness` is false.
    pub witness: Rational,
    pub exact_witness: bool,
}

/// Distinct roots of `p` in the open interval `(a, b)`, isolated.
fn isolate_items(s: &IntSturm, a: &Rational, b: &Rational) -> Vec<RootItem> {
    let p = s.poly();
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), s.variations(a), s.variations(b))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let c = vlo.saturating_sub(vhi);
        if c == 0 {
            continue;
        }
        let hi_root = p.sign_at(&hi) == 0;
        if c == 1 && !hi_root && p.sign_at(&lo) != 0 {
            out.push(RootItem::Open(lo, hi));
            continue;
        }
        if c == 1 && hi_root {
            out.push(RootItem::Point(hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
        let vm = s.variations(&mid);
        stack.push((lo, mid.clone(), vlo, vm));
        stack.push((mid, hi, vm, vhi));
    }
    // The (a, b] convention counts b itself; the domain is open.
    out.retain(|it| !matches!(it, RootItem::Point(x) if x == b));
    out
}

fn refine(s: &IntSturm, item: &RootItem) -> RootItem {
    match item {
        RootItem::Point(_) => item.clone(),
        RootItem::Open(lo, hi) => {
            let mid = (lo + hi) / Rational::from_integer(BigInt::from(2));
            if s.poly().sign_at(&mid) == 0 {
                RootItem::Point(mid)
            } else if s.count(lo, &mid) == 1 {
                RootItem::Open(lo.clone(), mid)
            } else {
                RootItem::Open(mid, hi.clone())
            }
        }
    }
}

const MAX_REFINEMENTS: usize = 100_000;

/// Every sign vector (tie convention `sgn(0) = 1`) that the family realizes on
/// the open interval `(a, b)`, computed exactly.
///
/// Roots that are never hit exactly by dyadic refinement contribute only
/// through their adjacent cells unless the vector at the root is new (even
/// multiplicity), in which case it is reported with an approximate witness.
pub fn realized_sign_vectors(polys: &[RatPoly], a: &Rational, b: &Rational) -> Result<Vec<RealizedVector>> {
    if a >= b {
        return Err(Error::EmptyInterval { lo: rat_to_f64(a), hi: rat_to_f64(b) });
    }
    let ints: Vec<IntPoly> = polys.iter().map(RatPoly::to_int_poly).collect();
    let sturms: Vec<IntSturm> = ints.iter().map(IntSturm::new).collect::<Result<_>>()?;
    let sign01 = |j: usize, x: &Rational| u8::from(ints[j].sign_at(x) >= 0);

    let mut items: Vec<(RootItem, usize)> = Vec::new();
    for (j, s) in sturms.iter().enumerate() {
        for it in isolate_items(s, a, b) {
            items.push((it, j));
        }
    }

    let mut steps = 0;
    loop {
        items.sort_by(|x, y| x.0.lo().cmp(y.0.lo()).then(x.0.hi().cmp(y.0.hi())));
        let mut changed = false;
        // Keep open items clear of the domain ends.
        for (it, j) in items.iter_mut() {
            if let RootItem::Open(lo, hi) = it {
                if lo == a || hi == b {
                    *it = refine(&sturms[*j], it);
                    changed = true;
                }
            }
        }
        for i in 0..items.len().saturating_sub(1) {
            let (l, r) = items.split_at_mut(i + 1);
            let (x, jx) = &mut l[i];
            let (y, jy) = &mut r[0];
            let separated = match (&*x, &*y) {
                (RootItem::Point(p), RootItem::Point(q)) => p < q || (p == q && jx != jy),
                _ => x.hi() < y.lo(),
            };
            if separated {
                continue;
            }
            changed = true;
            // A point root of one member may be the isolated root of another.
            let contains = |it: &RootItem, p: &Rational| matches!(it, RootItem::Open(lo, hi) if lo < p && p < hi);
            if let RootItem::Point(p) = &*x {
                if contains(y, p) && ints[*jy].sign_at(p) == 0 {
                    *y = RootItem::Point(p.clone());
                    continue;
                }
            }
            if let RootItem::Point(q) = &*y {
                if contains(x, q) && ints[*jx].sign_at(q) == 0 {
                    *x = RootItem::Point(q.clone());
                    continue;
                }
            }
            for (it, j) in [(x, *jx), (y, *jy)] {
                if let RootItem::Open(..) = it {
                    *it = refine(&sturms[j], it);
                }
            }
        }
        if !changed {
            break;
        }
        steps += 1;
        if steps > MAX_REFINEMENTS {
            return Err(Error::Unsupported(
                "exact root separation did not converge (shared irrational root?)".into(),
            ));
        }
    }

    // Group coincident exact points.
    let mut groups: Vec<(RootItem, Vec<usize>)> = Vec::new();
    for (it, j) in items {
        match (&it, groups.last_mut()) {
            (RootItem::Point(p), Some((RootItem::Point(q), js))) if p == q => js.push(j),
            _ => groups.push((it, vec![j])),
        }
    }

    let two = Rational::from_integer(BigInt::from(2));
    let vector_at = |x: &Rational| -> Vec<u8> { (0..polys.len()).map(|j| sign01(j, x)).collect() };
    let mut out: Vec<RealizedVector> = Vec::new();
    let mut push = |v: RealizedVector| {
        if !out.iter().any(|o| o.signs == v.signs) {
            out.push(v);
        }
    };
    let mut left = a.clone();
    for (it, js) in &groups {
        let gap = (&left + it.lo()) / &two;
        let cell = vector_at(&gap);
        push(RealizedVector { signs: cell.clone(), witness: gap, exact_witness: true });
        match it {
            RootItem::Point(p) => {
                push(RealizedVector { signs: vector_at(p), witness: p.clone(), exact_witness: true });
            }
            RootItem::Open(lo, hi) => {
                let mut v = cell;
                for &j in js {
                    v[j] = 1;
                }
                push(RealizedVector { signs: v, witness: (lo + hi) / &two, exact_witness: false });
            }
        }
        left = it.hi().clone();
    }
    let gap = (&left + b) / &two;
    push(RealizedVector { signs: vector_at(&gap), witness: gap, exact_witness: true });
    Ok(out)
}
