use std::path::Path;

use proptest::prelude::*;
use skdepth::PointSet;
use skdepth_cli::io::{parse_points, parse_results, write_json, write_points, write_rows_csv, DepthRow};

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

fn row() -> impl Strategy<Value = DepthRow> {
    (finite(), finite(), 0.0..=1.0f64, any::<u64>(), any::<u64>(), "[a-z:0-9.]{1,8}", any::<u32>()).prop_map(
        |(qx, qy, depth, raw_count, normalizer, kind, t)| DepthRow {
            qx,
            qy,
            depth,
            raw_count,
            normalizer,
            kind,
            method: "exact".into(),
            wall_time_us: u64::from(t),
        },
    )
}

proptest! {
    #[test]
    fn points_round_trip(coords in prop::collection::vec((finite(), finite()), 0..50)) {
        let set = PointSet::from_flat(2, coords.iter().flat_map(|&(x, y)| [x, y]).collect()).unwrap();
        let mut buf = Vec::new();
        write_points(&mut buf, &set).unwrap();
        let back = parse_points(Path::new("mem"), std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(back.iter().collect::<Vec<_>>(), set.iter().collect::<Vec<_>>());
    }

    #[test]
    fn results_round_trip(rows in prop::collection::vec(row(), 0..20)) {
        let mut csv_buf = Vec::new();
        write_rows_csv(&mut csv_buf, &rows).unwrap();
        let text = String::from_utf8(csv_buf).unwrap();
        // An empty CSV has no header row; the writer emits one only with data.
        if !rows.is_empty() {
            prop_assert_eq!(&parse_results(Path::new("mem"), &text).unwrap(), &rows);
        }
        let mut json_buf = Vec::new();
        write_json(&mut json_buf, &rows).unwrap();
        prop_assert_eq!(parse_results(Path::new("mem"), std::str::from_utf8(&json_buf).unwrap()).unwrap(), rows);
    }
}
