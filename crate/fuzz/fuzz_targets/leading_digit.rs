#![no_main]

use arbitrary::Arbitrary;
use benford_core::{leading_digit, Error, NumberBase};
use libfuzzer_sys::fuzz_target;

#[derive(Arbitrary, Debug)]
struct Input {
    bits: u64,
    base_seed: u16,
}

fuzz_target!(|input: Input| {
    let value = f64::from_bits(input.bits);
    let base = NumberBase::new(u64::from(input.base_seed % 256).max(2)).unwrap();
    match leading_digit(value, base) {
        Ok(digit) => {
            assert!(
                digit >= 1 && digit < base.value(),
                "digit {digit} out of range"
            );
            assert!(value != 0.0 && value.is_finite());
        }
        Err(Error::ZeroValue) => assert_eq!(value, 0.0),
        Err(Error::NonFiniteValue(_)) => assert!(!value.is_finite()),
        Err(other) => panic!("unexpected error: {other}"),
    }
});
