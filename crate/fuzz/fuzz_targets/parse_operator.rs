#![no_main]

use heatframe::grammar::parse_operator;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(op) = parse_operator(src) {
        let printed = op.to_string();
        assert_eq!(parse_operator(&printed).as_ref(), Ok(&op), "{printed}");
    }
});
