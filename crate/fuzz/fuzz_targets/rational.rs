#![no_main]

use affmult_cli::parse_rational;
use libfuzzer_sys::fuzz_target;

// A literal that parses must survive a round trip through its printed form.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_rational(text) {
        let printed = affmult::scalar::format_rational(&x);
        assert_eq!(parse_rational(&printed).ok(), Some(x));
    }
});
