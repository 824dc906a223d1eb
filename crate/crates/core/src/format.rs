//! Plain-text matrix files.
//!
//! ```text
//! field 2 1 1 1          # or: ext p k s t   (GF(p^k)(ω), ω² = s + tω)
//! 3 7                    # rows cols
//! labels p1 p2 p3 p4 p5 p6 p7
//! roles f=p4
//! 1 0 0 1 1 0 1
//! 0 1 0 1 0 1 1
//! 0 0 1 0 1 1 1
//! ```
//!
//! `labels` and `roles` are optional. Entries are element codes. Blank
//! lines and text after `#` are ignored, and a `VERDICT:` line ends the
//! file, so command output can be read back directly.

use crate::error::{Error, Result};
use crate::field::{extension_with, field_with_modulus, make_field, FieldRef};
use crate::geometry::FamilyMatrix;
use crate::linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub mat: Mat,
    pub roles: Vec<(String, String)>,
}

impl MatrixFile {
    pub fn new(mat: Mat) -> MatrixFile {
        MatrixFile { mat, roles: Vec::new() }
    }

    pub fn role(&self, name: &str) -> Option<&str> {
        self.roles.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }
}

impl From<&FamilyMatrix> for MatrixFile {
    fn from(fm: &FamilyMatrix) -> Self {
        MatrixFile {
            mat: fm.mat.clone(),
            roles: fm.roles.clone(),
        }
    }
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn numbers(line: usize, words: &[&str]) -> Result<Vec<u32>> {
    words
        .iter()
        .map(|w| {
            w.parse::<u32>()
                .or_else(|_| err(line, format!("`{w}` is not a number")))
        })
        .collect()
}

fn parse_field(line: usize, words: &[&str]) -> Result<FieldRef> {
    let wrap = |e: Error| Error::Parse {
        line,
        msg: e.to_string(),
    };
    match words.first() {
        Some(&"field") => {
            let n = numbers(line, &words[1..])?;
            if n.len() < 2 {
                return err(line, "expected `field p k c0 … ck`");
            }
            let (p, k) = (n[0], n[1] as usize);
            if n.len() != 3 + k {
                return err(line, format!("expected {} modulus coefficients", k + 1));
            }
            field_with_modulus(p, &n[2..]).map_err(wrap)
        }
        Some(&"ext") => {
            let n = numbers(line, &words[1..])?;
            if n.len() != 4 {
                return err(line, "expected `ext p k s t`");
            }
            let base = make_field(n[0], n[1]).map_err(wrap)?;
            Ok(extension_with(&base, n[2], n[3]).map_err(wrap)?.ext)
        }
        _ => err(line, "expected a `field` or `ext` header"),
    }
}

/// Parse the text of a matrix file.
pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .take_while(|(_, l)| !l.starts_with("VERDICT:"))
        .filter(|(_, l)| !l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return err(1, "empty file");
    };
    let field = parse_field(hl, &header.split_whitespace().collect::<Vec<_>>())?;
    let Some((dl, dims)) = lines.next() else {
        return err(hl + 1, "missing `rows cols` line");
    };
    let d = numbers(dl, &dims.split_whitespace().collect::<Vec<_>>())?;
    if d.len() != 2 {
        return err(dl, "expected `rows cols`");
    }
    let (rows, cols) = (d[0] as usize, d[1] as usize);
    let mut labels: Option<Vec<String>> = None;
    let mut roles = Vec::new();
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (ln, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "labels" if seen_rows == 0 && labels.is_none() => {
                if words.len() - 1 != cols {
                    return err(ln, format!("expected {cols} labels, found {}", words.len() - 1));
                }
                labels = Some(words[1..].iter().map(|s| s.to_string()).collect());
            }
            "roles" if seen_rows == 0 && roles.is_empty() => {
                for w in &words[1..] {
                    let Some((k, v)) = w.split_once('=') else {
                        return err(ln, format!("role `{w}` is not of the form name=label"));
                    };
                    roles.push((k.to_string(), v.to_string()));
                }
            }
            _ => {
                let row = numbers(ln, &words)?;
                if row.len() != cols {
                    return err(ln, format!("expected {cols} entries, found {}", row.len()));
                }
                if seen_rows == rows {
                    return err(ln, format!("more than {rows} rows"));
                }
                if let Some(&a) = row.iter().find(|&&a| a >= field.order()) {
                    return err(
                        ln,
                        format!("entry {a} is not an element of a field of order {}", field.order()),
                    );
                }
                data.extend(row);
                seen_rows += 1;
            }
        }
    }
    // Rows of a matrix without columns are blank lines.
    if cols == 0 {
        seen_rows = rows;
    }
    if seen_rows != rows {
        return err(
            text.lines().count().max(1),
            format!("expected {rows} rows, found {seen_rows}"),
        );
    }
    let mut mat = Mat::new(&field, rows, cols, data)?;
    if let Some(l) = labels {
        mat = mat.with_labels(l).map_err(|e| Error::Parse {
            line: dl + 1,
            msg: e.to_string(),
        })?;
    }
    for (_, v) in &roles {
        if mat.labels().is_some() {
            mat.index_of(v)?;
        }
    }
    Ok(MatrixFile { mat, roles })
}

/// Serialize; `parse_matrix(&write_matrix(f)) == f`.
pub fn write_matrix(f: &MatrixFile) -> String {
    let m = &f.mat;
    let mut out = String::new();
    out.push_str(&m.field().header());
    out.push('\n');
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    if let Some(l) = m.labels() {
        out.push_str("labels ");
        out.push_str(&l.join(" "));
        out.push('\n');
    }
    if !f.roles.is_empty() {
        let r: Vec<String> = f.roles.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str("roles ");
        out.push_str(&r.join(" "));
        out.push('\n');
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|a| a.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix_file(path: &std::path::Path) -> Result<MatrixFile> {
    parse_matrix(&std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{bar_matrix, pg_matrix};

    #[test]
    fn round_trips() {
        for fm in [pg_matrix(3, 2).unwrap(), bar_matrix(3, 2).unwrap()] {
            let f = MatrixFile::from(&fm);
            let text = write_matrix(&f);
            let back = parse_matrix(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(write_matrix(&back), text);
        }
    }

    #[test]
    fn rejects_out_of_range_entries() {
        let text = "field 2 1 1 1\n2 2\n0 1\n1 2\n";
        match parse_matrix(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrix("field 2 2 1 1 1\n1 1\n1\n").is_ok());
        assert!(parse_matrix("field 2 2 1 0 1\n1 1\n1\n").is_err());
    }
}
