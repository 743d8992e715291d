//! Learning curves for both classifiers on the bundled synthetic fixture.
//!
//! Pass a directory to also write curve.csv and the SVG charts.

use std::path::{Path, PathBuf};

use polarity::experiment::{
    emit_csv, emit_svg_chart, run_learning_curve, summary_table, Dataset, DatasetSource, ExperimentConfig,
    MetricSelector,
};

fn main() -> polarity::Result<()> {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fixture");
    let mut config = ExperimentConfig::new(vec![Dataset {
        name: "fixture".into(),
        source: DatasetSource::PolarityFiles {
            pos: fixture.join("pos.txt"),
            neg: fixture.join("neg.txt"),
        },
    }]);
    config.training_sizes = vec![100, 500, 1000, 2000, 4500];
    let rows = run_learning_curve(&config)?;
    print!("{}", summary_table(&rows));

    if let Some(out) = std::env::args().nth(1).map(PathBuf::from) {
        std::fs::create_dir_all(&out).map_err(|e| polarity::Error::Io { path: out.clone(), source: e })?;
        emit_csv(&rows, &out.join("curve.csv"))?;
        for m in MetricSelector::ALL {
            emit_svg_chart(&rows, m, &out.join(format!("fixture_{}.svg", m.name())))?;
        }
        println!("wrote {}", out.display());
    }
    Ok(())
}
