//! Irreducible factorization of rational univariate polynomials.
//!
//! Pipeline: Yun squarefree decomposition over Q, reduction of each
//! squarefree part to a primitive integer polynomial, Berlekamp
//! factorization modulo a good small prime, quadratic Hensel lifting past
//! the Mignotte coefficient bound, and exhaustive subset recombination.
//! Degrees here stay small (characteristic polynomials of desk-size
//! matrices), so the exponential recombination step is harmless.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::{FieldChar, Scalar, UniPoly};

/// Monic irreducible factors with multiplicities, in a deterministic
/// order (degree, then coefficient sequence). The product times the
/// leading coefficient of the input reproduces the input exactly.
pub fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.characteristic() != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "factorization is implemented over Q".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    let mut g = f.make_monic();

    // split off the power of T
    let mut t_mult = 0usize;
    while !g.is_zero() && g.coeff(0).is_zero() {
        let coeffs = g.coeffs()[1..].to_vec();
        g = UniPoly::from_coeffs(FieldChar::Zero, coeffs);
        t_mult += 1;
    }
    if t_mult > 0 {
        out.push((UniPoly::from_ints(FieldChar::Zero, &[0, 1]), t_mult));
    }

    for (part, mult) in yun_squarefree(&g) {
        for irred in factor_squarefree(&part) {
            out.push((irred, mult));
        }
    }
    out.sort_by(compare_factor_entries);
    Ok(out)
}

fn compare_factor_entries(a: &(UniPoly, usize), b: &(UniPoly, usize)) -> std::cmp::Ordering {
    compare_polys(&a.0, &b.0).then(a.1.cmp(&b.1))
}

fn compare_polys(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for d in (0..a.coeffs().len().max(b.coeffs().len())).rev() {
                let (ca, cb) = (a.coeff(d), b.coeff(d));
                let (ra, rb) = (ca.as_rational().unwrap(), cb.as_rational().unwrap());
                match ra.cmp(rb) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// Yun's algorithm over Q: returns monic squarefree parts with their
/// multiplicities, skipping constants.
pub fn yun_squarefree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.is_zero() || f.is_constant() {
        return out;
    }
    let f = f.make_monic();
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.divrem(&a).expect("gcd divides").0;
    let mut c = df.divrem(&a).expect("gcd divides").0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1usize;
    while !b.is_constant() {
        let ai = b.gcd(&d);
        if !ai.is_constant() {
            out.push((ai.make_monic(), i));
        }
        b = b.divrem(&ai).expect("gcd divides").0;
        c = d.divrem(&ai).expect("gcd divides").0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// ---- integer polynomial helpers ----

#[derive(Clone, Debug, PartialEq)]
struct IntPoly(Vec<BigInt>); // ascending, trimmed

impl IntPoly {
    fn trim(mut v: Vec<BigInt>) -> Self {
        while matches!(v.last(), Some(c) if c.is_zero()) {
            v.pop();
        }
        IntPoly(v)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn to_rational(&self) -> UniPoly {
        UniPoly::from_coeffs(
            FieldChar::Zero,
            self.0
                .iter()
                .map(|c| Scalar::from_bigint(c, FieldChar::Zero))
                .collect(),
        )
    }

    fn max_abs(&self) -> BigInt {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Clears denominators and divides out the content; positive leading
/// coefficient.
fn primitive_int(f: &UniPoly) -> IntPoly {
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        let r = c.as_rational().expect("rational scalar");
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&denom_lcm / r.denom())
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return IntPoly(Vec::new());
    }
    let sign = if ints.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let divisor = content * sign;
    IntPoly::trim(ints.into_iter().map(|c| c / &divisor).collect())
}

fn int_to_mod(f: &IntPoly, p: u64) -> UniPoly {
    UniPoly::from_coeffs(
        FieldChar::Prime(p),
        f.0
            .iter()
            .map(|c| Scalar::from_bigint(c, FieldChar::Prime(p)))
            .collect(),
    )
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
];

/// Factors a monic squarefree rational polynomial into monic rational
/// irreducibles, deterministically.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let deg = f.degree().expect("nonzero");
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![f.make_monic()];
    }
    let g = primitive_int(f);
    let p = PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let fp = int_to_mod(&g, p);
            fp.degree() == Some(deg) && fp.is_squarefree_mod_p()
        })
        .expect("a good prime exists for every squarefree integer polynomial");

    let fp = int_to_mod(&g, p).make_monic();
    let modular_factors = berlekamp(&fp, p);
    if modular_factors.len() == 1 {
        return vec![g.to_rational().make_monic()];
    }

    // lift to p^(2^k) beyond twice the Mignotte-style bound
    let bound = {
        let h = g.max_abs();
        let two_n = BigInt::from(2).pow(deg as u32 + 1);
        two_n * h * g.lc().abs() * BigInt::from(deg as u64 + 1)
    };
    let mut modulus = BigInt::from(p);
    let mut lifts = 0u32;
    while modulus <= BigInt::from(2) * &bound {
        modulus = &modulus * &modulus;
        lifts += 1;
    }
    let lifted = hensel_lift_tree(&g, &modular_factors, p, lifts);
    recombine(&g, lifted, &modulus)
        .into_iter()
        .map(|ip| ip.to_rational().make_monic())
        .collect()
}

/// True if gcd(f, f') is constant over F_p; the check uses the field
/// arithmetic already present in UniPoly.
trait SquarefreeModP {
    fn is_squarefree_mod_p(&self) -> bool;
}

impl SquarefreeModP for UniPoly {
    fn is_squarefree_mod_p(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).is_constant()
    }
}

/// Deterministic Berlekamp factorization of a monic squarefree
/// polynomial over F_p. Returns monic irreducible factors.
fn berlekamp(f: &UniPoly, p: u64) -> Vec<UniPoly> {
    let n = f.degree().expect("nonconstant");
    let ch = FieldChar::Prime(p);
    if n == 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix Q: column j = T^(j p) mod f
    let mut q = crate::linalg::Mat::zero(n, n, ch);
    let t_p = UniPoly::monomial(Scalar::one(ch), p as usize)
        .divrem(f)
        .expect("nonzero modulus")
        .1;
    let mut power = UniPoly::one(ch); // T^(0*p)
    for j in 0..n {
        for i in 0..n {
            q.set(i, j, power.coeff(i));
        }
        power = power.mul(&t_p).divrem(f).expect("nonzero modulus").1;
    }
    let q_minus_i = q.sub(&crate::linalg::Mat::identity(n, ch));
    let kernel = q_minus_i.kernel_basis();
    let r = kernel.len();
    let mut factors = vec![f.clone()];
    if r == 1 {
        return factors;
    }
    'outer: for v in &kernel {
        let v_poly = UniPoly::from_coeffs(ch, v.clone());
        if v_poly.is_constant() {
            continue;
        }
        for c in 0..p {
            let shifted = v_poly.sub(&UniPoly::constant(Scalar::from_int(c as i64, ch)));
            let mut next = Vec::new();
            for w in factors {
                if w.degree() == Some(1) {
                    next.push(w);
                    continue;
                }
                let g = w.gcd(&shifted);
                if g.is_constant() || g.degree() == w.degree() {
                    next.push(w);
                } else {
                    let (quot, rem) = w.divrem(&g).expect("gcd divides");
                    debug_assert!(rem.is_zero());
                    next.push(g.make_monic());
                    next.push(quot.make_monic());
                }
            }
            factors = next;
            if factors.len() == r {
                break 'outer;
            }
        }
    }
    debug_assert_eq!(factors.len(), r, "Berlekamp must find all factors");
    factors.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            for d in (0..a.coeffs().len()).rev() {
                match (a.coeff(d), b.coeff(d)) {
                    (Scalar::Mod { value: x, .. }, Scalar::Mod { value: y, .. }) => {
                        if x != y {
                            return x.cmp(&y);
                        }
                    }
                    _ => unreachable!(),
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    factors
}

// ---- arithmetic on polynomials modulo m (m a prime power) ----

fn mod_reduce(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c % m;
    if r.is_negative() {
        r += m;
    }
    r
}

fn mpoly_reduce(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = f.iter().map(|c| mod_reduce(c, m)).collect();
    while matches!(v.last(), Some(c) if c.is_zero()) {
        v.pop();
    }
    v
}

fn mpoly_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, item) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *item = mod_reduce(&(x + y), m);
    }
    mpoly_reduce(&out, m)
}

fn mpoly_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, item) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        *item = mod_reduce(&(x - y), m);
    }
    mpoly_reduce(&out, m)
}

fn mpoly_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = mod_reduce(&(&out[i + j] + x * y), m);
        }
    }
    mpoly_reduce(&out, m)
}

/// Division by a monic polynomial, all mod m.
fn mpoly_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false), "monic divisor");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - db;
        if !lead.is_zero() {
            quot[shift] = lead.clone();
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] = mod_reduce(&(&rem[shift + i] - &lead * bc), m);
            }
        }
        while matches!(rem.last(), Some(c) if c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (mpoly_reduce(&quot, m), mpoly_reduce(&rem, m))
}

fn unipoly_modp_to_big(f: &UniPoly) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Mod { value, .. } => BigInt::from(*value),
            _ => unreachable!("prime field coefficients"),
        })
        .collect()
}

/// Extended Euclid over F_p via UniPoly: s*a + t*b = 1 for coprime a, b.
fn ext_gcd_modp(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let ch = a.characteristic();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(ch), UniPoly::zero(ch));
    let (mut t0, mut t1) = (UniPoly::zero(ch), UniPoly::one(ch));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lead_inv = r0.leading().expect("gcd of coprimes is a unit").inv().unwrap();
    (s0.scalar_mul(&lead_inv), t0.scalar_mul(&lead_inv))
}

/// Quadratic Hensel step: from f = g h (mod m) with Bezout data mod m to
/// the same data mod m^2. f, g, h monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = mpoly_sub(f, &mpoly_mul(g, h, &m2), &m2);
    let se = mpoly_mul(s, &e, &m2);
    let (q, r) = mpoly_divrem_monic(&se, h, &m2);
    let g_new = mpoly_add(
        &mpoly_add(g, &mpoly_mul(t, &e, &m2), &m2),
        &mpoly_mul(&q, g, &m2),
        &m2,
    );
    let h_new = mpoly_add(h, &r, &m2);
    // refresh the Bezout identity mod m^2
    let b = mpoly_sub(
        &mpoly_add(
            &mpoly_mul(s, &g_new, &m2),
            &mpoly_mul(t, &h_new, &m2),
            &m2,
        ),
        &[BigInt::one()],
        &m2,
    );
    let sb = mpoly_mul(s, &b, &m2);
    let (c, d) = mpoly_divrem_monic(&sb, &h_new, &m2);
    let s_new = mpoly_sub(s, &d, &m2);
    let t_new = mpoly_sub(
        &mpoly_sub(t, &mpoly_mul(t, &b, &m2), &m2),
        &mpoly_mul(&c, &g_new, &m2),
        &m2,
    );
    (g_new, h_new, s_new, t_new)
}

/// Lifts the monic factorization f/lc = prod factors from mod p to
/// mod p^(2^lifts), splitting the factor list in two and recursing.
fn hensel_lift_tree(
    f: &IntPoly,
    factors_mod_p: &[UniPoly],
    p: u64,
    lifts: u32,
) -> Vec<Vec<BigInt>> {
    let target = BigInt::from(p).pow(2u32.pow(lifts));
    // make f monic mod target: f_monic = f / lc(f) (lc invertible mod p^k)
    let lc = f.lc();
    let lc_inv = mod_inverse_bigint(&lc, &target);
    let f_monic: Vec<BigInt> = f
        .0
        .iter()
        .map(|c| mod_reduce(&(c * &lc_inv), &target))
        .collect();
    lift_split(&mpoly_reduce(&f_monic, &target), factors_mod_p, p, lifts)
}

fn lift_split(
    f_monic: &[BigInt],
    factors_mod_p: &[UniPoly],
    p: u64,
    lifts: u32,
) -> Vec<Vec<BigInt>> {
    if factors_mod_p.len() == 1 {
        return vec![f_monic.to_vec()];
    }
    let mid = factors_mod_p.len() / 2;
    let (left, right) = factors_mod_p.split_at(mid);
    let ch = FieldChar::Prime(p);
    let g_p = left.iter().fold(UniPoly::one(ch), |acc, x| acc.mul(x));
    let h_p = right.iter().fold(UniPoly::one(ch), |acc, x| acc.mul(x));
    let (s_p, t_p) = ext_gcd_modp(&g_p, &h_p);

    let mut g = unipoly_modp_to_big(&g_p);
    let mut h = unipoly_modp_to_big(&h_p);
    let mut s = unipoly_modp_to_big(&s_p);
    let mut t = unipoly_modp_to_big(&t_p);
    let mut m = BigInt::from(p);
    for _ in 0..lifts {
        (g, h, s, t) = hensel_step(f_monic, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = lift_split(&g, left, p, lifts);
    out.extend(lift_split(&h, right, p, lifts));
    out
}

fn mod_inverse_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient invertible mod p^k");
    mod_reduce(&e.x, m)
}

/// Symmetric representative in (-m/2, m/2\].
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = mod_reduce(c, m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Exhaustive subset recombination of lifted monic factors into true
/// integer factors of g.
fn recombine(g: &IntPoly, lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut g_cur = g.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'sizes: while 2 * size <= remaining.len() {
        let indices: Vec<usize> = (0..remaining.len()).collect();
        for subset in subsets_of_size(&indices, size) {
            let lc = g_cur.lc();
            let mut cand = vec![mod_reduce(&lc, modulus)];
            for &i in &subset {
                cand = mpoly_mul(&cand, &remaining[i], modulus);
            }
            let cand_int =
                IntPoly::trim(cand.iter().map(|c| symmetric(c, modulus)).collect());
            if cand_int.0.is_empty() {
                continue;
            }
            let cand_prim = primitive_int(&cand_int.to_rational());
            let (quot, rem) = g_cur
                .to_rational()
                .divrem(&cand_prim.to_rational())
                .expect("nonzero candidate");
            if rem.is_zero() {
                out.push(cand_prim);
                g_cur = primitive_int(&quot);
                let subset_set: std::collections::BTreeSet<usize> =
                    subset.into_iter().collect();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset_set.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'sizes;
            }
        }
        size += 1;
    }
    if g_cur.degree() >= 1 {
        out.push(g_cur);
    }
    out
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
