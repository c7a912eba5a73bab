//! Square-free kernels of integers: trial division, Pollard rho (Brent's
//! variant) under an iteration budget, and perfect-power detection.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{IntZ, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FactorBudget {
    /// Primes up to this bound are removed by trial division.
    pub trial_bound: u64,
    /// Rho iterations allowed per composite.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self { trial_bound: 1_000_000, rho_iterations: 1_000_000 }
    }
}

/// `n = kernel * cofactor_sq^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeKernel {
    pub kernel: IntZ,
    pub cofactor_sq: IntZ,
    /// True iff the kernel is proven square-free.
    pub complete: bool,
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i as u64).collect()
}

fn primes_cached(bound: u64) -> std::borrow::Cow<'static, [u64]> {
    static DEFAULT: OnceLock<Vec<u64>> = OnceLock::new();
    const CACHED: u64 = 1_000_000;
    if bound <= CACHED {
        let all = DEFAULT.get_or_init(|| primes_up_to(CACHED));
        let end = all.partition_point(|&p| p <= bound);
        std::borrow::Cow::Borrowed(&all[..end])
    } else {
        std::borrow::Cow::Owned(primes_up_to(bound))
    }
}

const MR_BASES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &IntZ) -> bool {
    let one = IntZ::one();
    let two = IntZ::from(2);
    if n < &two {
        return false;
    }
    for &p in &MR_BASES {
        let p = IntZ::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = IntZ::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding rho; returns a nontrivial factor of composite `n` or `None`
/// once `iterations` steps are spent.
pub fn pollard_rho(n: &IntZ, iterations: u64) -> Option<IntZ> {
    if n.is_even() {
        return Some(IntZ::from(2));
    }
    let one = IntZ::one();
    let mut spent = 0u64;
    let mut c = IntZ::one();
    while spent < iterations {
        let mut y = IntZ::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = IntZ::one();
        let mut g = IntZ::one();
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == one && spent < iterations {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * diff) % n;
                }
                spent += steps;
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            // Backtrack one step at a time from the last saved point.
            for _ in 0..=r {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && &g != n {
            return Some(g);
        }
        c += 1u32;
    }
    None
}

/// If `n = r^k` for a prime `k`, returns `(r, k)` for the smallest such `k`.
pub fn perfect_power(n: &IntZ) -> Option<(IntZ, u32)> {
    if n <= &IntZ::one() {
        return None;
    }
    let max_k = n.bits();
    for k in primes_cached(max_k.min(1_000_000)).iter().map(|&k| k as u32) {
        let r = n.nth_root(k);
        if r <= IntZ::one() {
            break;
        }
        if num_traits::pow::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Prime-power map of `|n|` (entries may be unresolved composites) and whether
/// every entry is proven prime or part of a proven square-free block.
fn factor_map(n: &IntZ, budget: &FactorBudget) -> (BTreeMap<IntZ, u32>, bool) {
    let mut out: BTreeMap<IntZ, u32> = BTreeMap::new();
    let mut m = n.abs();
    let mut complete = true;
    for &p in primes_cached(budget.trial_bound).iter() {
        if m.is_one() {
            break;
        }
        let pb = IntZ::from(p);
        if &pb * &pb > m {
            // m is 1 or a prime
            *out.entry(m.clone()).or_default() += 1;
            m = IntZ::one();
            break;
        }
        if m.to_u64().is_some_and(|v| v % p != 0) {
            continue;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if m.is_one() {
        return (out, complete);
    }
    let b = IntZ::from(budget.trial_bound.max(2));
    let cube = &b * &b * &b;
    let mut stack: Vec<(IntZ, u32)> = vec![(m, 1)];
    while let Some((c, mult)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            *out.entry(c).or_default() += mult;
            continue;
        }
        if let Some((r, k)) = perfect_power(&c) {
            stack.push((r, mult * k));
            continue;
        }
        // No prime factor below the trial bound and c < bound^3: c = p*q, p != q.
        if c < cube && budget.trial_bound >= 2 {
            *out.entry(c).or_default() += mult;
            continue;
        }
        match pollard_rho(&c, budget.rho_iterations) {
            Some(f) => {
                let other = &c / &f;
                stack.push((f, mult));
                stack.push((other, mult));
            }
            None => {
                complete = false;
                *out.entry(c).or_default() += mult;
            }
        }
    }
    (merge_shared_factors(out), complete)
}

/// Splits entries that share a common factor so that keys are pairwise coprime.
fn merge_shared_factors(mut map: BTreeMap<IntZ, u32>) -> BTreeMap<IntZ, u32> {
    loop {
        let keys: Vec<IntZ> = map.keys().cloned().collect();
        let mut split = None;
        'outer: for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let g = keys[i].gcd(&keys[j]);
                if !g.is_one() {
                    split = Some((keys[i].clone(), keys[j].clone(), g));
                    break 'outer;
                }
            }
        }
        let Some((a, b, g)) = split else {
            return map;
        };
        let ea = map.remove(&a).unwrap();
        let eb = map.remove(&b).unwrap();
        for (v, e) in [(&a / &g, ea), (&b / &g, eb), (g.clone(), ea + eb)] {
            if !v.is_one() {
                *map.entry(v).or_default() += e;
            }
        }
    }
}

fn kernel_from_map(sign_negative: bool, map: &BTreeMap<IntZ, u32>, complete: bool) -> SquareFreeKernel {
    let mut kernel = IntZ::one();
    let mut cof = IntZ::one();
    for (p, &e) in map {
        if e % 2 == 1 {
            kernel *= p;
        }
        if e >= 2 {
            cof *= num_traits::pow::pow(p.clone(), (e / 2) as usize);
        }
    }
    if sign_negative {
        kernel = -kernel;
    }
    SquareFreeKernel { kernel, cofactor_sq: cof, complete }
}

/// Square-free kernel of a nonzero integer.
pub fn square_free_kernel_int(n: &IntZ, budget: &FactorBudget) -> Result<SquareFreeKernel> {
    square_free_kernel_of_product(std::slice::from_ref(n), budget)
}

/// Square-free kernel of a product given by its factors; each factor is
/// decomposed separately, which keeps the numbers handed to rho small.
pub fn square_free_kernel_of_product(factors: &[IntZ], budget: &FactorBudget) -> Result<SquareFreeKernel> {
    if factors.is_empty() {
        return Ok(SquareFreeKernel { kernel: IntZ::one(), cofactor_sq: IntZ::one(), complete: true });
    }
    if factors.iter().any(|f| f.is_zero()) {
        return Err(Error::Invalid("square-free kernel of zero".into()));
    }
    let negative = factors.iter().filter(|f| f.is_negative()).count() % 2 == 1;
    let mut merged: BTreeMap<IntZ, u32> = BTreeMap::new();
    let mut complete = true;
    for f in factors {
        let (m, c) = factor_map(f, budget);
        complete &= c;
        for (p, e) in m {
            *merged.entry(p).or_default() += e;
        }
    }
    Ok(kernel_from_map(negative, &merge_shared_factors(merged), complete))
}

/// `d = kernel * scale^2` for a nonzero rational given as a product of rational factors.
pub fn rational_square_free(factors: &[Rat], budget: &FactorBudget) -> Result<(SquareFreeKernel, Rat)> {
    let mut ints = Vec::with_capacity(2 * factors.len());
    let mut den = IntZ::one();
    for f in factors {
        ints.push(f.numer().clone());
        if !f.denom().is_one() {
            ints.push(f.denom().clone());
            den *= f.denom();
        }
    }
    let k = square_free_kernel_of_product(&ints, budget)?;
    // prod(n_i/d_i) = prod(n_i d_i) / D^2
    let scale = Rat::new(k.cofactor_sq.clone(), den);
    Ok((k, scale))
}

fn divisors(n: &IntZ, budget: &FactorBudget) -> Result<Vec<IntZ>> {
    let (m, complete) = factor_map(n, budget);
    if !complete {
        return Err(Error::Invalid(format!("could not factor {n} within the budget")));
    }
    let mut out = vec![IntZ::one()];
    for (p, e) in m {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Distinct rational roots of a univariate polynomial `sum c_k v^k`, sorted.
pub fn rational_roots(coeffs: &[Rat]) -> Result<Vec<Rat>> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rat::zero());
        c.drain(..lead_zeros);
    }
    if c.len() >= 2 {
        let den = c.iter().fold(IntZ::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<IntZ> = c.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
        let budget = FactorBudget::default();
        let ps = divisors(&ints[0], &budget)?;
        let qs = divisors(ints.last().expect("nonempty"), &budget)?;
        for q in &qs {
            for p in &ps {
                for cand in [Rat::new(p.clone(), q.clone()), Rat::new(-p.clone(), q.clone())] {
                    let v = c.iter().rev().fold(Rat::zero(), |acc, k| acc * &cand + k);
                    if v.is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {

    #[test]
    fn rational_roots_by_candidates() {
        let c = |v: &[i64]| v.iter().map(|&k| Rat::from_integer(k.into())).collect::<Vec<_>>();
        // (2x - 3)(x + 1) x^2 (x^2 + 1)
        let p = c(&[0, 0, -3, -1, -1, -1, 2]);
        assert_eq!(
            rational_roots(&p).unwrap(),
            vec![Rat::from_integer((-1).into()), Rat::zero(), Rat::new(3.into(), 2.into())]
        );
        assert_eq!(rational_roots(&c(&[1, 0, 1])).unwrap(), vec![]);
        assert!(rational_roots(&c(&[0])).is_err());
    }
    use super::*;

    fn k(n: i64) -> (i64, i64, bool) {
        let r = square_free_kernel_int(&IntZ::from(n), &FactorBudget::default()).unwrap();
        (r.kernel.to_i64().unwrap(), r.cofactor_sq.to_i64().unwrap(), r.complete)
    }

    #[test]
    fn small_examples() {
        assert_eq!(k(72), (2, 6, true));
        assert_eq!(k(-180), (-5, 6, true));
        assert_eq!(k(101), (101, 1, true));
        assert_eq!(k(1), (1, 1, true));
        assert_eq!(k(-1), (-1, 1, true));
        assert!(square_free_kernel_int(&IntZ::zero(), &FactorBudget::default()).is_err());
    }

    #[test]
    fn large_prime_squares_need_rho_or_power_test() {
        // (10^9+7)^2 * (10^9+9) * 3
        let p = IntZ::from(1_000_000_007u64);
        let q = IntZ::from(1_000_000_009u64);
        let n = &p * &p * &q * 3;
        let r = square_free_kernel_int(&n, &FactorBudget::default()).unwrap();
        assert_eq!(r.kernel, &q * 3);
        assert_eq!(r.cofactor_sq, p);
        assert!(r.complete);
        // p*q*q with a tiny trial bound forces rho
        let budget = FactorBudget { trial_bound: 100, rho_iterations: 1_000_000 };
        let n = &p * &q * &q;
        let r = square_free_kernel_int(&n, &budget).unwrap();
        assert_eq!((r.kernel.clone(), r.cofactor_sq.clone(), r.complete), (p.clone(), q.clone(), true));
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        // product of two ~40-bit primes squared times a 61-bit prime, rho budget tiny
        let p = IntZ::from(1_099_511_627_791u64);
        let q = IntZ::from(2_305_843_009_213_693_951u64);
        let n = &p * &p * &q;
        let budget = FactorBudget { trial_bound: 1000, rho_iterations: 10 };
        let r = square_free_kernel_int(&n, &budget).unwrap();
        assert_eq!(&r.kernel * &r.cofactor_sq * &r.cofactor_sq, n);
        assert!(!r.complete);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&IntZ::from(2_305_843_009_213_693_951u64)));
        assert!(!is_probable_prime(&IntZ::from(3_215_031_751u64)));
        assert!(!is_probable_prime(&IntZ::from(1)));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&IntZ::from(3u32.pow(10))), Some((IntZ::from(243), 2)));
        assert_eq!(perfect_power(&IntZ::from(3u32.pow(5))), Some((IntZ::from(3), 5)));
        assert_eq!(perfect_power(&IntZ::from(12)), None);
    }

    #[test]
    fn rationals_and_products() {
        let f = [Rat::new(IntZ::from(8), IntZ::from(27)), Rat::new(IntZ::from(-3), IntZ::from(2))];
        let (kern, scale) = rational_square_free(&f, &FactorBudget::default()).unwrap();
        // 8/27 * -3/2 = -4/9 = -1 * (2/3)^2
        assert_eq!(kern.kernel, IntZ::from(-1));
        assert_eq!(&scale * &scale, Rat::new(IntZ::from(4), IntZ::from(9)));
    }
}
