#![no_main]

use std::num::NonZeroUsize;

use arbitrary::Arbitrary;
use benford_core::{build_histogram, ingest_reader, IngestOptions, NumberBase};
use libfuzzer_sys::fuzz_target;

#[derive(Arbitrary, Debug)]
struct Input<'a> {
    column: u8,
    delimiter: char,
    base: u8,
    data: &'a [u8],
}

fuzz_target!(|input: Input<'_>| {
    let options = IngestOptions {
        column: NonZeroUsize::new(usize::from(input.column % 9) + 1),
        delimiter: input.delimiter,
    };
    let Ok(dataset) = ingest_reader(std::io::Cursor::new(input.data), "fuzz", &options) else {
        return;
    };
    let Ok(base) = NumberBase::new(u64::from(input.base.max(2))) else {
        return;
    };
    let histogram = build_histogram(&dataset, base);
    assert_eq!(histogram.total() as usize, dataset.len());
    for &digit in histogram.counts().keys() {
        assert!(digit >= 1 && digit < base.value());
    }
});
