//! Univariate polynomials over the coefficient field, with the limited exact
//! factoring needed for canonical forms: root stripping by exhaustive or
//! rational root search, small-degree irreducibility checks, and the quartic
//! resolvent split over Q. Whatever cannot be resolved is kept whole.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::field::{Field, Scalar, MAX_FACTOR_PRIME};

/// Coefficients ascending by degree; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// x − λ
    pub fn x_minus(field: Field, lambda: &Scalar) -> Poly {
        Poly::new(field, vec![field.neg(lambda), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.field.is_one(&self.leading())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero leading");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.add(&a, &b));
        }
        Poly::new(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.deg() + other.deg() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = self.field;
        let mut r = self.clone();
        let mut q = Poly::zero(f);
        let dlead_inv = f.inv(&divisor.leading()).expect("nonzero leading");
        while !r.is_zero() && r.deg() >= divisor.deg() {
            let shift = r.deg() - divisor.deg();
            let c = f.mul(&r.leading(), &dlead_inv);
            let mut t = vec![f.zero(); shift + 1];
            t[shift] = c;
            let t = Poly::new(f, t);
            q = q.add(&t);
            r = r.sub(&t.mul(divisor));
        }
        (q, r)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format(c);
            let t = match i {
                0 => cs,
                1 if f.is_one(c) => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if f.is_one(c) => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// One factor of a polynomial: either a split linear power (x−λ)^k or a
/// residual factor of degree ≥ 2 with its multiplicity. Residuals are
/// irreducible whenever the factoring limits allow deciding that.
#[derive(Clone, PartialEq, Debug)]
pub enum PolyFactor {
    Linear { lambda: Scalar, power: usize },
    Residual { poly: Poly, power: usize },
}

/// Factor a monic polynomial into linear powers and residual blocks.
///
/// Over GF(p) with p ≤ 2^20 roots are found exhaustively; leftover nonlinear
/// parts are split by minimal-degree trial division when the candidate space
/// is small. Over Q roots come from the rational root theorem, degree ≤ 3
/// leftovers are irreducible outright, and quartics are split through the
/// resolvent cubic. Anything beyond that is returned whole as a residual.
pub fn factor(poly: &Poly) -> Vec<PolyFactor> {
    assert!(!poly.is_zero() && poly.is_monic(), "factor expects a monic polynomial");
    let f = poly.field;
    let mut factors = Vec::new();
    let mut rest = poly.clone();

    for lambda in root_candidates(&rest) {
        if rest.deg() == 0 {
            break;
        }
        let lin = Poly::x_minus(f, &lambda);
        let mut power = 0;
        while !rest.is_zero() && f.is_zero(&rest.eval(&lambda)) {
            rest = rest.div_rem(&lin).0;
            power += 1;
        }
        if power > 0 {
            factors.push(PolyFactor::Linear { lambda, power });
        }
    }

    if rest.deg() >= 2 {
        factors.extend(factor_nonlinear(&rest));
    }
    factors
}

fn root_candidates(poly: &Poly) -> Vec<Scalar> {
    let f = poly.field;
    match f {
        Field::Prime(_) => f
            .enumerate()
            .map(|all| {
                all.into_iter()
                    .filter(|x| f.is_zero(&poly.eval(x)))
                    .collect()
            })
            .unwrap_or_default(),
        Field::Rationals => rational_roots(poly),
    }
}

/// Rational root theorem on the integer-scaled polynomial.
fn rational_roots(poly: &Poly) -> Vec<Scalar> {
    let mut lcm = BigInt::one();
    for c in &poly.coeffs {
        let (_, den) = c.as_rational().expect("rational coefficients");
        lcm = num::integer::lcm(lcm, den.clone());
    }
    let ints: Vec<BigInt> = poly
        .coeffs
        .iter()
        .map(|c| {
            let r = c.rat().unwrap() * BigRational::from_integer(lcm.clone());
            debug_assert!(r.is_integer());
            r.to_integer()
        })
        .collect();
    let lead = ints.last().unwrap().clone();
    let Some(lowest_idx) = ints.iter().position(|c| !c.is_zero()) else {
        return vec![];
    };
    let lowest = ints[lowest_idx].clone();

    let mut roots = Vec::new();
    // x = 0 root when the constant term vanishes
    if lowest_idx > 0 {
        roots.push(Scalar::Rat(BigRational::zero()));
    }
    let nums = divisors(&lowest.abs());
    let dens = divisors(&lead.abs());
    for n in &nums {
        for d in &dens {
            for sign in [1i64, -1] {
                let cand = BigRational::new(n * BigInt::from(sign), d.clone());
                let s = Scalar::Rat(cand);
                if poly.field.is_zero(&poly.eval(&s)) && !roots.contains(&s) {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    // trial enumeration; coefficient sizes stay small at the scales this
    // library targets, and we stop hard at 10^6 candidates
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= *n && d <= limit {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn factor_nonlinear(rest: &Poly) -> Vec<PolyFactor> {
    match rest.field {
        Field::Prime(p) => factor_nonlinear_gf(rest, p),
        Field::Rationals => factor_nonlinear_q(rest),
    }
}

/// Minimal-degree trial division over GF(p). The first divisor found at each
/// degree is necessarily irreducible.
fn factor_nonlinear_gf(rest: &Poly, p: u64) -> Vec<PolyFactor> {
    let f = rest.field;
    let mut factors = Vec::new();
    let mut g = rest.clone();
    let mut d = 2usize;
    'outer: while g.deg() >= 2 {
        if g.deg() <= 3 {
            // no roots and degree ≤ 3: irreducible
            factors.push(PolyFactor::Residual { poly: g.monic(), power: 1 });
            return factors;
        }
        while d <= g.deg() / 2 {
            let count = (p as u128).checked_pow(d as u32);
            if p > MAX_FACTOR_PRIME || count.map_or(true, |c| c > 1_000_000) {
                break; // candidate space too large; keep g whole
            }
            for cand in monic_candidates(f, p, d) {
                if cand.divides(&g) {
                    let mut power = 0;
                    while cand.divides(&g) {
                        g = g.div_rem(&cand).0;
                        power += 1;
                    }
                    factors.push(PolyFactor::Residual { poly: cand, power });
                    if g.deg() < 2 {
                        debug_assert_eq!(g.deg(), 0);
                        return factors;
                    }
                    continue 'outer;
                }
            }
            d += 1;
        }
        // no divisor within reach: g is irreducible (if d ran out) or undecided
        factors.push(PolyFactor::Residual { poly: g.monic(), power: 1 });
        return factors;
    }
    factors
}

/// All monic degree-d polynomials over GF(p), lexicographic by coefficients.
fn monic_candidates(f: Field, p: u64, d: usize) -> impl Iterator<Item = Poly> {
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(Scalar::Fp((idx % p as u128) as u64));
            idx /= p as u128;
        }
        coeffs.push(f.one());
        Poly::new(f, coeffs)
    })
}

fn factor_nonlinear_q(rest: &Poly) -> Vec<PolyFactor> {
    let mut factors = Vec::new();
    let g = rest.monic();
    if g.deg() == 4 {
        if let Some((q1, q2)) = split_quartic(&g) {
            if q1 == q2 {
                factors.push(PolyFactor::Residual { poly: q1, power: 2 });
            } else {
                factors.push(PolyFactor::Residual { poly: q1, power: 1 });
                factors.push(PolyFactor::Residual { poly: q2, power: 1 });
            }
            return factors;
        }
    }
    // degree 2 or 3 with no rational roots is irreducible; higher degrees are
    // recorded whole. Repeated factors common in invariant factors are still
    // detected by squaring.
    if g.deg() >= 4 && g.deg() % 2 == 0 {
        if let Some(h) = exact_sqrt_poly(&g) {
            factors.push(PolyFactor::Residual { poly: h, power: 2 });
            return factors;
        }
    }
    factors.push(PolyFactor::Residual { poly: g, power: 1 });
    factors
}

/// h with h² = g, when one exists (monic g of even degree).
fn exact_sqrt_poly(g: &Poly) -> Option<Poly> {
    let f = g.field;
    let n = g.deg() / 2;
    let mut coeffs = vec![f.zero(); n + 1];
    coeffs[n] = f.one();
    // solve coefficientwise from the top
    for i in (0..n).rev() {
        let h = Poly::new(f, coeffs.clone());
        let sq = h.mul(&h);
        let want = g.coeffs.get(n + i).cloned().unwrap_or_else(|| f.zero());
        let have = sq.coeffs.get(n + i).cloned().unwrap_or_else(|| f.zero());
        // coefficient of x^{n+i} in h² is 2·c_i + (terms already fixed)
        let diff = f.sub(&want, &have);
        let two_inv = f.inv(&f.from_i64(2)).ok()?;
        coeffs[i] = f.mul(&diff, &two_inv);
    }
    let h = Poly::new(f, coeffs);
    if h.mul(&h) == *g {
        Some(h)
    } else {
        None
    }
}

fn rational_square_root(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Split a monic rational quartic with no rational roots into two monic
/// quadratics via the resolvent cubic, when a rational split exists.
fn split_quartic(g: &Poly) -> Option<(Poly, Poly)> {
    let f = g.field;
    debug_assert_eq!(g.deg(), 4);
    let a = g.coeffs[3].rat().unwrap().clone();
    // depress: x = y - a/4
    let shift = Scalar::Rat(-&a / BigRational::from_integer(BigInt::from(4)));
    let y_plus = Poly::new(f, vec![shift.clone(), f.one()]); // y + shift = x substitution target
    let dep = compose(g, &y_plus);
    debug_assert!(f.is_zero(&dep.coeffs[3]));
    let p = dep.coeffs[2].rat().unwrap().clone();
    let q = dep.coeffs[1].rat().unwrap().clone();
    let r = dep.coeffs[0].rat().unwrap().clone();

    // resolvent: z³ + 2p z² + (p²−4r) z − q²
    let res = Poly::new(
        f,
        vec![
            Scalar::Rat(-(&q * &q)),
            Scalar::Rat(&p * &p - BigRational::from_integer(BigInt::from(4)) * &r),
            Scalar::Rat(BigRational::from_integer(BigInt::from(2)) * &p),
            f.one(),
        ],
    );
    for z in rational_roots(&res) {
        let z = z.rat().unwrap().clone();
        if z.is_zero() {
            if !q.is_zero() {
                continue;
            }
            // (y²+t)(y²+u), t+u = p, tu = r
            let disc = &p * &p - BigRational::from_integer(BigInt::from(4)) * &r;
            let s2 = rational_square_root(&disc)?;
            let two = BigRational::from_integer(BigInt::from(2));
            let t = (&p - &s2) / &two;
            let u = (&p + &s2) / &two;
            let q1 = Poly::new(f, vec![Scalar::Rat(t), f.zero(), f.one()]);
            let q2 = Poly::new(f, vec![Scalar::Rat(u), f.zero(), f.one()]);
            return undepress_pair(g, &shift, q1, q2);
        }
        let Some(s) = rational_square_root(&z) else { continue };
        if s.is_zero() {
            continue;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let t = (&p + &z - &q / &s) / &two;
        let u = (&p + &z + &q / &s) / &two;
        let q1 = Poly::new(f, vec![Scalar::Rat(t), Scalar::Rat(s.clone()), f.one()]);
        let q2 = Poly::new(f, vec![Scalar::Rat(u), Scalar::Rat(-s), f.one()]);
        return undepress_pair(g, &shift, q1, q2);
    }
    None
}

fn undepress_pair(g: &Poly, shift: &Scalar, q1: Poly, q2: Poly) -> Option<(Poly, Poly)> {
    let f = g.field;
    // y = x + a/4, i.e. substitute y = x - shift
    let x_minus_shift = Poly::new(f, vec![f.neg(shift), f.one()]);
    let f1 = compose(&q1, &x_minus_shift);
    let f2 = compose(&q2, &x_minus_shift);
    if f1.mul(&f2) == *g {
        Some((f1.monic(), f2.monic()))
    } else {
        None
    }
}

/// g(h(x))
fn compose(g: &Poly, h: &Poly) -> Poly {
    let f = g.field;
    let mut acc = Poly::zero(f);
    for c in g.coeffs.iter().rev() {
        acc = acc.mul(h).add(&Poly::constant(f, c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Field {
        Field::Rationals
    }

    #[test]
    fn div_rem_round_trip() {
        let f = qf();
        let a = Poly::new(f, vec![f.from_i64(2), f.from_i64(0), f.from_i64(1)]); // x²+2
        let b = Poly::new(f, vec![f.from_i64(1), f.from_i64(1)]); // x+1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_powers() {
        let f = qf();
        let lin = Poly::x_minus(f, &f.from_i64(2));
        let a = lin.mul(&lin).mul(&lin);
        let b = lin.mul(&lin);
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn factor_split_cubic() {
        let f = qf();
        // (x−1)²(x−3)
        let p = Poly::x_minus(f, &f.from_i64(1));
        let p = p.mul(&Poly::x_minus(f, &f.from_i64(1)));
        let p = p.mul(&Poly::x_minus(f, &f.from_i64(3)));
        let fs = factor(&p);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&PolyFactor::Linear { lambda: f.from_i64(1), power: 2 }));
        assert!(fs.contains(&PolyFactor::Linear { lambda: f.from_i64(3), power: 1 }));
    }

    #[test]
    fn factor_rational_root() {
        let f = qf();
        // 1/3 is a root of x − 1/3
        let third = f.from_fraction(1, 3).unwrap();
        let p = Poly::x_minus(f, &third);
        let fs = factor(&p);
        assert_eq!(fs, vec![PolyFactor::Linear { lambda: third, power: 1 }]);
    }

    #[test]
    fn x2_plus_1_over_gf3_is_irreducible() {
        let f = Field::prime(3).unwrap();
        let p = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        let fs = factor(&p);
        assert_eq!(fs, vec![PolyFactor::Residual { poly: p, power: 1 }]);
    }

    #[test]
    fn x2_plus_1_over_gf5_splits() {
        let f = Field::prime(5).unwrap();
        let p = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        let fs = factor(&p);
        // roots 2 and 3
        assert_eq!(fs.len(), 2);
        assert!(matches!(fs[0], PolyFactor::Linear { power: 1, .. }));
    }

    #[test]
    fn quartic_splits_into_quadratics_over_q() {
        let f = qf();
        // (x²+1)(x²+2x+3): no rational roots
        let a = Poly::new(f, vec![f.from_i64(1), f.zero(), f.one()]);
        let b = Poly::new(f, vec![f.from_i64(3), f.from_i64(2), f.one()]);
        let p = a.mul(&b);
        let fs = factor(&p);
        let polys: Vec<&Poly> = fs
            .iter()
            .map(|x| match x {
                PolyFactor::Residual { poly, .. } => poly,
                _ => panic!("expected residuals"),
            })
            .collect();
        assert_eq!(polys.len(), 2);
        assert!(polys.contains(&&a) && polys.contains(&&b));
    }

    #[test]
    fn quartic_square_of_quadratic() {
        let f = qf();
        let a = Poly::new(f, vec![f.from_i64(1), f.from_i64(1), f.one()]); // x²+x+1
        let p = a.mul(&a);
        let fs = factor(&p);
        assert_eq!(fs, vec![PolyFactor::Residual { poly: a, power: 2 }]);
    }

    #[test]
    fn gf2_degree4_trial_division() {
        let f = Field::prime(2).unwrap();
        // (x²+x+1)² over GF(2)
        let a = Poly::new(f, vec![f.one(), f.one(), f.one()]);
        let p = a.mul(&a);
        let fs = factor(&p);
        assert_eq!(fs, vec![PolyFactor::Residual { poly: a, power: 2 }]);
    }
}
