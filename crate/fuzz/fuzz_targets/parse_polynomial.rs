#![no_main]

use heatframe::grammar::parse_polynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    // anything that parses must survive a print/parse round trip
    if let Ok(p) = parse_polynomial(src) {
        let printed = p.to_string();
        assert_eq!(parse_polynomial(&printed).as_ref(), Ok(&p), "{printed}");
    }
});
