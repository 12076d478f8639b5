use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{FilterError, Result};

/// Uniformly sampled signal `values[j] = f(t0 + j dt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(t0: f64, dt: f64, values: Vec<Complex64>) -> Result<Self> {
        if dt <= 0.0 || !dt.is_finite() || !t0.is_finite() {
            return Err(FilterError::Config(format!("grid needs finite t0 and dt > 0, got t0={t0} dt={dt}")));
        }
        if values.len() < 2 {
            return Err(FilterError::Config(format!("need at least 2 samples, got {}", values.len())));
        }
        Ok(TimeSeries { t0, dt, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|j| self.time(j))
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

/// How to read the time axis of a one-column file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitGrid {
    pub t0: f64,
    pub dt: f64,
}

fn parse_field(s: &str, line: u64, path: &Path) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| {
        FilterError::Io(format!("{}:{line}: cannot parse '{}' as a number", path.display(), s.trim()))
    })
}

/// Reads `t,value`, `t,re,im`, or (with `implicit`) a single `value` column.
///
/// `#` starts a comment line; a non-numeric first row is taken as a header.
pub fn read_signal(path: &Path, implicit: Option<ImplicitGrid>) -> Result<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| FilterError::Io(format!("{}: {e}", path.display())))?;

    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut width = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| FilterError::Io(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if i == 0 && record.get(0).is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let w = *width.get_or_insert(record.len());
        if record.len() != w {
            return Err(FilterError::Io(format!(
                "{}:{line}: expected {w} columns, found {}",
                path.display(),
                record.len()
            )));
        }
        let fields = record
            .iter()
            .map(|f| parse_field(f, line, path))
            .collect::<Result<Vec<_>>>()?;
        match (fields.as_slice(), implicit) {
            ([v], Some(_)) => values.push(Complex64::new(*v, 0.0)),
            ([_], None) => {
                return Err(FilterError::Config(
                    "one-column input needs --t0 and --dt".to_string(),
                ))
            }
            ([t, v], _) => {
                times.push(*t);
                values.push(Complex64::new(*v, 0.0));
            }
            ([t, re, im], _) => {
                times.push(*t);
                values.push(Complex64::new(*re, *im));
            }
            _ => {
                return Err(FilterError::Io(format!(
                    "{}:{line}: expected 1 to 3 columns, found {}",
                    path.display(),
                    fields.len()
                )))
            }
        }
    }
    if let Some(v) = values.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(FilterError::Io(format!("{}: non-finite sample {v}", path.display())));
    }

    if times.is_empty() {
        let grid = implicit.ok_or_else(|| FilterError::Io(format!("{}: no samples", path.display())))?;
        return TimeSeries::new(grid.t0, grid.dt, values);
    }
    if times.len() < 2 {
        return Err(FilterError::Io(format!("{}: need at least 2 samples", path.display())));
    }
    let t0 = times[0];
    let dt = (times[times.len() - 1] - t0) / (times.len() - 1) as f64;
    if dt.is_nan() || dt <= 0.0 {
        return Err(FilterError::Io(format!("{}: time column must increase", path.display())));
    }
    for (j, &t) in times.iter().enumerate() {
        if (t - (t0 + j as f64 * dt)).abs() > 1e-6 * dt {
            return Err(FilterError::Io(format!(
                "{}: sample {j} at t={t} breaks uniform spacing dt={dt}",
                path.display()
            )));
        }
    }
    TimeSeries::new(t0, dt, values)
}

/// Serializes as `t,value`, or `t,re,im` when any imaginary part is nonzero.
pub fn signal_to_csv(series: &TimeSeries, comments: &[String]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    for c in comments {
        writeln!(buf, "# {c}")?;
    }
    let real = series.is_real();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let header: &[&str] = if real { &["t", "value"] } else { &["t", "re", "im"] };
        w.write_record(header).map_err(|e| FilterError::Io(e.to_string()))?;
        for (t, v) in series.times().zip(&series.values) {
            let row = if real {
                vec![format!("{t:?}"), format!("{:?}", v.re)]
            } else {
                vec![format!("{t:?}"), format!("{:?}", v.re), format!("{:?}", v.im)]
            };
            w.write_record(&row).map_err(|e| FilterError::Io(e.to_string()))?;
        }
        w.flush()?;
    }
    Ok(buf)
}

/// Writes `bytes` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| FilterError::Io(format!("{}: {e}", dir.display())))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| FilterError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

pub fn write_signal(path: &Path, series: &TimeSeries, comments: &[String]) -> Result<()> {
    write_atomic(path, &signal_to_csv(series, comments)?)
}
