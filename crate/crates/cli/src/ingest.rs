//! CSV input.

use symrc::{Dataset, Error, Result};

/// Which columns form X and Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Roles {
    /// The first `r` columns are X, the next `s` are Y.
    Counts { r: usize, s: usize },
    /// Columns by header name.
    Named { x: Vec<String>, y: Vec<String> },
}

impl Roles {
    /// Parses `x:a,b;y:c` (names) or `x:2 y:1` (counts).
    pub fn parse(spec: &str) -> Result<Self> {
        let mut x = None;
        let mut y = None;
        for part in spec.split([';', ' ']).filter(|p| !p.trim().is_empty()) {
            let (role, cols) = part
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("role '{part}' should look like x:cols or y:cols")))?;
            let cols: Vec<String> = cols.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect();
            if cols.is_empty() {
                return Err(Error::Input(format!("role '{part}' lists no columns")));
            }
            match role.trim() {
                "x" | "X" => x = Some(cols),
                "y" | "Y" => y = Some(cols),
                other => return Err(Error::Input(format!("unknown role '{other}' (x or y)"))),
            }
        }
        let (x, y) = match (x, y) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::Input("roles must declare both x and y".into())),
        };
        let count = |c: &[String]| if c.len() == 1 { c[0].parse::<usize>().ok() } else { None };
        match (count(&x), count(&y)) {
            (Some(r), Some(s)) if r > 0 && s > 0 => Ok(Roles::Counts { r, s }),
            (Some(_), Some(_)) => Err(Error::Input("role counts must be positive".into())),
            _ => Ok(Roles::Named { x, y }),
        }
    }
}

/// Reads a headed CSV file into a dataset with the declared split.
/// Lines starting with `#` are ignored.
pub fn ingest_csv(path: &std::path::Path, roles: &Roles) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(Error::Input(format!("{}: empty file", path.display())));
    }
    let (cols, r, s) = match roles {
        Roles::Counts { r, s } => {
            if r + s > header.len() {
                return Err(Error::Input(format!(
                    "roles ask for {} columns but the file has {}",
                    r + s,
                    header.len()
                )));
            }
            ((0..r + s).collect::<Vec<_>>(), *r, *s)
        }
        Roles::Named { x, y } => {
            let find = |name: &String| {
                header
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::Input(format!("missing column '{name}' (have {})", header.join(", "))))
            };
            let cols = x.iter().chain(y).map(find).collect::<Result<Vec<_>>>()?;
            (cols, x.len(), y.len())
        }
    };
    let mut values = Vec::new();
    let mut n = 0;
    for (k, rec) in reader.records().enumerate() {
        let row = k + 1;
        let rec = rec.map_err(|e| Error::Input(format!("row {row}: {e}")))?;
        for &c in &cols {
            let cell = rec.get(c).unwrap_or("");
            if cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan") {
                return Err(Error::Input(format!("row {row}: missing value in column '{}'", header[c])));
            }
            let v: f64 = cell.parse().map_err(|_| {
                Error::Input(format!("row {row}, column '{}': '{cell}' is not a number", header[c]))
            })?;
            if !v.is_finite() {
                return Err(Error::Input(format!("row {row}, column '{}': '{cell}' is not finite", header[c])));
            }
            values.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::Input(format!("{}: no observations", path.display())));
    }
    Dataset::new(values, r, s)
}

/// Header names of the selected columns in X, Y order.
pub fn selected_names(path: &std::path::Path, roles: &Roles) -> Result<Vec<String>> {
    match roles {
        Roles::Named { x, y } => Ok(x.iter().chain(y).cloned().collect()),
        Roles::Counts { r, s } => {
            let mut reader = csv::ReaderBuilder::new()
                .comment(Some(b'#'))
                .trim(csv::Trim::All)
                .from_path(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            let h = reader.headers().map_err(|e| Error::Input(e.to_string()))?;
            Ok(h.iter().take(r + s).map(str::to_string).collect())
        }
    }
}
