use std::fs;
use std::io::{self, Write};
use std::path::Path;

use tempfile::NamedTempFile;
use undirectify::montecarlo::{series_rows, SeriesRow, SuiteReport};

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and a rename, so the destination is either untouched or complete.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Writes to `path`, or to stdout without one.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// CSV with one row per `(n, statistic)`: estimate, interval and bound.
pub fn emit_series(reports: &[SuiteReport]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["suite", "n", "statistic", "estimate", "ci_low", "ci_high", "bound"])?;
    for r in reports {
        for row in series_rows(r) {
            w.serialize(row)?;
        }
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

/// Reads rows written by [`emit_series`].
pub fn parse_series(bytes: &[u8]) -> Result<Vec<SeriesRow>, csv::Error> {
    csv::Reader::from_reader(bytes).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use undirectify::montecarlo::VerdictReport;

    #[test]
    fn empty_report_is_header_only() {
        let out = emit_series(&[SuiteReport::new("x", vec![])]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "suite,n,statistic,estimate,ci_low,ci_high,bound\n");
    }

    #[test]
    fn series_round_trip() {
        let checks = vec![
            VerdictReport::upper("a, with comma", 0.1 + 0.2, 1e-3, 1.0 / 3.0, "b", 0.0)
                .at_n(7)
                .with_ci((0.25, 0.35)),
            VerdictReport::info("\"quoted\"", 6.02e23, 0.0),
        ];
        let report = SuiteReport::new("s", checks);
        let back = parse_series(&emit_series(&[report.clone()]).unwrap()).unwrap();
        assert_eq!(back, series_rows(&report));
        for (a, b) in back.iter().zip(series_rows(&report)) {
            assert!((a.estimate - b.estimate).abs() <= 1e-12);
        }
    }

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/out.json");
        write_atomic(&p, b"first version, longer").unwrap();
        write_atomic(&p, b"second").unwrap();
        assert_eq!(fs::read(&p).unwrap(), b"second");
        assert_eq!(fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
