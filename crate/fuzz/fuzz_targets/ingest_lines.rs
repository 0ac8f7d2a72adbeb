#![no_main]

use benford_core::{build_histogram, conformance_report, ingest_reader, IngestOptions, NumberBase};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(dataset) = ingest_reader(
        std::io::Cursor::new(data),
        "fuzz",
        &IngestOptions::default(),
    ) else {
        // Invalid UTF-8 surfaces as an I/O error; never a panic.
        return;
    };
    let base = NumberBase::new(10).unwrap();
    // Every surviving value must be analyzable.
    for value in dataset.values() {
        let digit = value
            .leading_digit(base)
            .expect("ingested values are finite and non-zero");
        assert!((1..=9).contains(&digit));
    }
    let histogram = build_histogram(&dataset, base);
    assert_eq!(histogram.total() as usize, dataset.len());
    match conformance_report(&histogram) {
        Ok(report) => {
            assert!(report.mad_benford >= 0.0);
            assert!(report.kl_benford >= 0.0);
        }
        Err(_) => assert!(dataset.is_empty()),
    }
});
