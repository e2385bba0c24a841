//! Fuzz the CodeDef JSON decoder: no panics, and accepted definitions must
//! survive an export -> import round trip and answer the commutation check.

#![no_main]

use libfuzzer_sys::fuzz_target;
use pauli_modules::code::CodeDef;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(code) = CodeDef::from_json_str(text) {
        let _ = code.check_commuting();
        let json = serde_json::to_string(&code.to_json()).unwrap();
        let back = CodeDef::from_json_str(&json).expect("exported code must re-import");
        assert_eq!(back.sigma, code.sigma);
    }
});
