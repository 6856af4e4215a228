#![no_main]

use affmult_cli::job::Overrides;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = affmult_cli::parse_job(text) {
        let _ = spec.resolve(&Overrides::default());
    }
});
