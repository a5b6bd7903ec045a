#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match cpsehp::cli::parse_config_str(text) {
        Ok(pairs) => {
            // every accepted key must be one the parser advertises
            for (key, value) in &pairs {
                assert!(cpsehp::cli::CONFIG_KEYS.contains(&key.as_str()));
                assert!(!value.is_empty());
            }
            // parsing is deterministic
            assert_eq!(cpsehp::cli::parse_config_str(text).unwrap(), pairs);
        }
        Err(e) => {
            // error positions stay within the input
            assert!(e.line >= 1 && e.line <= text.lines().count().max(1));
        }
    }
});
