//! Fuzz the polynomial parser: no panics, and anything that parses must
//! survive a format -> parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauli_modules::field::Field;
use pauli_modules::poly::parse_poly;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for p in [2u64, 3, 5] {
        let field = Field::prime(p).unwrap();
        for dim in 1..=3 {
            if let Ok(poly) = parse_poly(text, &field, dim) {
                let back = parse_poly(&poly.to_string(), &field, dim)
                    .expect("formatted polynomial must re-parse");
                assert_eq!(back, poly);
            }
        }
    }
});
