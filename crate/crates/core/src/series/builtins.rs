use super::{GenSeries, SeriesError};
use crate::carriers::CatalogCarrier;
use crate::coeff::Ring;
use crate::finmonoid::{MonoidElement, PartialFinitenessMonoid, SupportDescriptor};

/// The series with coefficient 1 at every carrier element. Needs a carrier
/// that admits the whole set as a finitary support.
pub fn constant_one<R: Ring>(monoid: PartialFinitenessMonoid, ring: R) -> Result<GenSeries<R>, SeriesError> {
    let one = ring.one();
    GenSeries::from_fn(monoid, ring, SupportDescriptor::All, move |_| one.clone())
}

/// `Σ T^i`, i.e. `1/(1 − T)` on ℕ.
pub fn geometric<R: Ring>(monoid: PartialFinitenessMonoid, ring: R) -> Result<GenSeries<R>, SeriesError> {
    constant_one(monoid, ring)
}

/// The arithmetic function ζ(n) = 1 under Dirichlet convolution.
pub fn zeta<R: Ring>(ring: R) -> GenSeries<R> {
    let m = PartialFinitenessMonoid::catalog(CatalogCarrier::PosNatMulUsual).expect("catalog carrier");
    constant_one(m, ring).expect("ℕ∖{0} admits All")
}

/// Möbius values μ(0..=bound) by a linear sieve (index 0 unused).
pub fn moebius_values(bound: u64) -> Vec<i8> {
    let n = bound as usize;
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// The Möbius function as explicit terms for `1 ≤ n ≤ bound`. Outside that
/// range the series is zero, so it only represents μ on windows up to `bound`.
pub fn moebius<R: Ring>(ring: R, bound: u64) -> Result<GenSeries<R>, SeriesError> {
    if bound == 0 {
        return Err(SeriesError::Builtin("moebius needs a bound of at least 1".into()));
    }
    let m = PartialFinitenessMonoid::catalog(CatalogCarrier::PosNatMulUsual).expect("catalog carrier");
    let mu = moebius_values(bound);
    let terms: Vec<_> = (1..=bound)
        .filter(|&k| mu[k as usize] != 0)
        .map(|k| (MonoidElement::PosNat(k), ring.from_int(mu[k as usize] as i64)))
        .collect();
    GenSeries::from_terms(m, ring, terms)
}
