//! How D_3(X, 0) grows for a geometric progression versus an interval,
//! with a power-law fit and a result cache.
//!
//!     cargo run --release --example growth_scan

use detlab::detcount::{Engine, Limits};
use detlab::harness::{fit_exponent, run_scan, write_rows, Cache, DMode, ReportFormat, ScanConfig};
use detlab::{FamilyKind, FieldSpec};

pub fn main() {
    let dir = std::env::temp_dir().join(format!("detlab-growth-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut cache = Cache::open(dir.join("cache.jsonl")).unwrap();

    for family in [FamilyKind::gp2(), FamilyKind::Interval] {
        let cfg = ScanConfig {
            family,
            sizes: vec![3, 4, 5, 6],
            field: FieldSpec::Rationals,
            n: 3,
            dmode: DMode::Zero,
            engine: Engine::RowBlock,
            limits: Limits::default(),
        };
        let rows = run_scan(&cfg, Some(&mut cache)).unwrap();
        write_rows(&rows, ReportFormat::Csv, &mut std::io::stdout()).unwrap();
        let fit = fit_exponent(&rows).unwrap();
        println!(
            "{}: D_3(X, 0) ~ X^{:.3} (residual {:.3})\n",
            cfg.family.name(),
            fit.slope,
            fit.residual_stderr
        );

        let again = run_scan(&cfg, Some(&mut cache)).unwrap();
        assert_eq!(again, rows);
    }
    println!("cache answered {} lookups", cache.hits());
    std::fs::remove_dir_all(&dir).unwrap();
}
