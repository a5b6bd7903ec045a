#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = cpsehp::cli::parse_table_csv(3, text) {
        // the strict schema: exactly 21 (n, l) rows x 4 alpha columns,
        // all finite, alphas drawn from the published set
        assert_eq!(table.table_id, 3);
        assert_eq!(table.rows.len(), 84);
        for row in &table.rows {
            assert!(row.value.is_finite());
            assert!(cpsehp::cli::TABLE_ALPHAS.contains(&row.alpha));
        }
    }
});
