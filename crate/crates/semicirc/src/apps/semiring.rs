//! Semiring instances: a commutative additive semigroup plus an associative
//! multiplication distributing over it, registered by name.

use crate::rng::SplitMix64;
use crate::semigroup::{
    Semigroup, SemigroupError, Value, BOOL_AND, BOOL_OR, INT_SUM, TROPICAL_MIN,
};

/// A named semiring: the additive part is one of the semigroup instances,
/// multiplication is supplied here. Distributivity of `mul` over the add
/// operation is law-checked by sampling, as with the semigroup laws.
pub trait Semiring: Send + Sync {
    fn name(&self) -> &'static str;
    fn add(&self) -> &'static dyn Semigroup;
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError>;
    fn parse_value(&self, text: &str) -> Result<Value, SemigroupError> {
        self.add().parse_value(text)
    }
    fn format_value(&self, v: &Value) -> Result<String, SemigroupError> {
        self.add().format_value(v)
    }
    fn sample(&self, rng: &mut SplitMix64) -> Value {
        self.add().sample(rng)
    }
}

/// Integers with (+, *).
pub struct IntRing;
pub static INT_RING: IntRing = IntRing;

impl Semiring for IntRing {
    fn name(&self) -> &'static str {
        "int-ring"
    }
    fn add(&self) -> &'static dyn Semigroup {
        &INT_SUM
    }
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        let (a, b) = (a.as_int()?, b.as_int()?);
        a.checked_mul(b)
            .map(Value::Int)
            .ok_or(SemigroupError::Overflow("int-ring mul"))
    }
}

/// Integers with +inf under (min, +): the min-plus semiring.
pub struct TropicalMinPlus;
pub static TROPICAL: TropicalMinPlus = TropicalMinPlus;

impl Semiring for TropicalMinPlus {
    fn name(&self) -> &'static str {
        "tropical"
    }
    fn add(&self) -> &'static dyn Semigroup {
        &TROPICAL_MIN
    }
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        match (a, b) {
            (Value::Tropical(x), Value::Tropical(y)) => x
                .checked_add(*y)
                .map(Value::Tropical)
                .ok_or(SemigroupError::Overflow("tropical mul")),
            _ => Err(SemigroupError::TypeMismatch {
                expected: "tropical",
                got: if matches!(a, Value::Tropical(_)) {
                    b.kind()
                } else {
                    a.kind()
                },
            }),
        }
    }
}

/// Booleans with (or, and).
pub struct BooleanSemiring;
pub static BOOLEAN: BooleanSemiring = BooleanSemiring;

impl Semiring for BooleanSemiring {
    fn name(&self) -> &'static str {
        "boolean"
    }
    fn add(&self) -> &'static dyn Semigroup {
        &BOOL_OR
    }
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemigroupError> {
        BOOL_AND.combine(a, b)
    }
}

pub fn semirings() -> &'static [&'static dyn Semiring] {
    static ALL: [&dyn Semiring; 3] = [&INT_RING, &TROPICAL, &BOOLEAN];
    &ALL
}

pub fn find_semiring(name: &str) -> Result<&'static dyn Semiring, SemigroupError> {
    semirings()
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| SemigroupError::UnknownInstance(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Tropical;

    const LAW_SAMPLES: usize = 1000;

    #[test]
    fn distributivity_sampled() {
        for s in semirings() {
            let mut rng = SplitMix64::new(0xd157 ^ s.name().len() as u64);
            let add = s.add();
            assert!(add.is_commutative());
            for _ in 0..LAW_SAMPLES {
                let x = s.sample(&mut rng);
                let y = s.sample(&mut rng);
                let z = s.sample(&mut rng);
                // x*(y+z) = x*y + x*z
                let left = s.mul(&x, &add.combine(&y, &z).unwrap()).unwrap();
                let right = add
                    .combine(&s.mul(&x, &y).unwrap(), &s.mul(&x, &z).unwrap())
                    .unwrap();
                assert_eq!(left, right, "left distributivity in {}", s.name());
                // (x+y)*z = x*z + y*z
                let left = s.mul(&add.combine(&x, &y).unwrap(), &z).unwrap();
                let right = add
                    .combine(&s.mul(&x, &z).unwrap(), &s.mul(&y, &z).unwrap())
                    .unwrap();
                assert_eq!(left, right, "right distributivity in {}", s.name());
            }
        }
    }

    #[test]
    fn mul_is_associative() {
        for s in semirings() {
            let mut rng = SplitMix64::new(0xa550 ^ s.name().len() as u64);
            for _ in 0..LAW_SAMPLES {
                let x = s.sample(&mut rng);
                let y = s.sample(&mut rng);
                let z = s.sample(&mut rng);
                let left = s.mul(&s.mul(&x, &y).unwrap(), &z).unwrap();
                let right = s.mul(&x, &s.mul(&y, &z).unwrap()).unwrap();
                assert_eq!(left, right, "associativity of mul in {}", s.name());
            }
        }
    }

    #[test]
    fn registry_resolves_the_cli_names() {
        for name in ["int-ring", "tropical", "boolean"] {
            assert_eq!(find_semiring(name).unwrap().name(), name);
        }
        assert!(find_semiring("field").is_err());
    }

    #[test]
    fn tropical_infinity_behaves() {
        let inf = Value::Tropical(Tropical::Infinity);
        let five = Value::Tropical(Tropical::Finite(5));
        assert_eq!(TROPICAL.add().combine(&inf, &five).unwrap(), five);
        assert_eq!(TROPICAL.mul(&inf, &five).unwrap(), inf);
    }
}
