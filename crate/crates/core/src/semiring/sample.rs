use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;

use super::{PolyNat, PositiveRational, Semiring, Tropical, TropicalInt, TropicalRational};

/// Small random elements, used for numeric identity checks.
pub trait Sample: Semiring {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Sample for BigUint {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        BigUint::from(rng.gen_range(0u32..=6))
    }
}

impl Sample for BigInt {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        BigInt::from(rng.gen_range(-6i32..=6))
    }
}

impl Sample for PositiveRational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        PositiveRational::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=5)).expect("positive")
    }
}

impl Sample for TropicalInt {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Tropical(BigInt::from(rng.gen_range(-9i32..=9)))
    }
}

impl Sample for TropicalRational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let numer = BigInt::from(rng.gen_range(-9i32..=9));
        Tropical(BigRational::new(numer, BigInt::from(rng.gen_range(1i32..=4))))
    }
}

/// `c₀ + c₁·t` with `t` one of three variables.
impl Sample for PolyNat {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let var = ["t1", "t2", "t3"][rng.gen_range(0..3)];
        let c0 = PolyNat::constant(BigUint::from(rng.gen_range(0u32..=2)));
        let c1 = PolyNat::constant(BigUint::from(rng.gen_range(0u32..=2)));
        c0.add(&c1.mul(&PolyNat::var(var)))
    }
}
