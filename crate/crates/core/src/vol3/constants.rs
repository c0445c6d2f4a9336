//! The appendix matrices, stored as a versioned text file and parsed into
//! tower matrices.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::Vol3Error;
use crate::funcfield::{parse_tower_expr, TowerElem};
use crate::linalg::ExactMatrix;

pub const APPENDIX_TEXT: &str = include_str!("../../data/appendix.txt");
pub const APPENDIX_SHA256: &str = "26dda7003bba788ec44c94cbd5a0c5edf8adbbf117503dcb1f31e88f7caf4579";
pub const APPENDIX_FORMAT: &str = "vol3-appendix";
pub const APPENDIX_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct AppendixConstants {
    pub version: u32,
    pub sha256: String,
    pub matrices: BTreeMap<String, ExactMatrix<TowerElem>>,
}

impl AppendixConstants {
    pub fn get(&self, name: &str) -> Result<&ExactMatrix<TowerElem>, Vol3Error> {
        self.matrices
            .get(name)
            .ok_or_else(|| Vol3Error::ConstantsFormat {
                line: 0,
                msg: format!("matrix {name} missing"),
            })
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Parses constants text after checking it against `expected_sha256`.
pub fn parse_constants(text: &str, expected_sha256: &str) -> Result<AppendixConstants, Vol3Error> {
    let found = sha256_hex(text);
    if found != expected_sha256 {
        return Err(Vol3Error::ChecksumMismatch {
            expected: expected_sha256.to_string(),
            found,
        });
    }
    let bad = |line: usize, msg: String| Vol3Error::ConstantsFormat { line, msg };
    let mut version = None;
    let mut matrices = BTreeMap::new();
    let mut current: Option<(String, usize, Vec<Vec<TowerElem>>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match (current.as_mut(), words.next()) {
            (None, Some("format")) => {
                let fmt = words.next().unwrap_or("");
                let v: u32 = words
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad(lineno, "format line needs a version".into()))?;
                if fmt != APPENDIX_FORMAT || v != APPENDIX_VERSION {
                    return Err(bad(lineno, format!("unsupported format {fmt} {v}")));
                }
                version = Some(v);
            }
            (None, Some("matrix")) => {
                if version.is_none() {
                    return Err(bad(lineno, "matrix before format line".into()));
                }
                let name = words
                    .next()
                    .ok_or_else(|| bad(lineno, "matrix needs a name".into()))?
                    .to_string();
                let n: usize = words
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad(lineno, "matrix needs a size".into()))?;
                current = Some((name, n, Vec::new()));
            }
            (Some(_), Some("end")) => {
                let (name, n, rows) = current.take().expect("inside a matrix");
                if rows.len() != n {
                    return Err(bad(lineno, format!("{name}: {} rows, expected {n}", rows.len())));
                }
                let m = ExactMatrix::from_rows(rows).map_err(|e| bad(lineno, e.to_string()))?;
                if matrices.insert(name.clone(), m).is_some() {
                    return Err(bad(lineno, format!("duplicate matrix {name}")));
                }
            }
            (Some((name, n, rows)), _) => {
                let row = line
                    .split(',')
                    .map(|e| parse_tower_expr(e).map_err(|err| bad(lineno, format!("{name}: {err}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != *n {
                    return Err(bad(lineno, format!("{name}: row of length {}, expected {n}", row.len())));
                }
                rows.push(row);
            }
            (None, Some(other)) => return Err(bad(lineno, format!("unexpected `{other}`"))),
            (None, None) => unreachable!("blank lines skipped"),
        }
    }
    if let Some((name, _, _)) = current {
        return Err(bad(0, format!("matrix {name} not terminated")));
    }
    Ok(AppendixConstants {
        version: version.ok_or_else(|| bad(0, "no format line".into()))?,
        sha256: found,
        matrices,
    })
}

/// The embedded appendix constants, parsed once.
pub fn appendix() -> &'static AppendixConstants {
    static CELL: OnceLock<AppendixConstants> = OnceLock::new();
    CELL.get_or_init(|| parse_constants(APPENDIX_TEXT, APPENDIX_SHA256).expect("embedded appendix is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_file_parses() {
        let c = appendix();
        assert_eq!(c.version, 1);
        let names: Vec<&str> = c.matrices.keys().map(String::as_str).collect();
        assert_eq!(names, ["m_form", "omega_c", "omega_u", "rho_c", "rho_u"]);
        assert_eq!(c.get("omega_u").unwrap().rows(), 8);
        assert_eq!(c.get("rho_c").unwrap().rows(), 4);
    }

    #[test]
    fn tampering_is_detected() {
        let tampered = APPENDIX_TEXT.replacen("2*t, -2*t", "2*t, -3*t", 1);
        assert!(matches!(
            parse_constants(&tampered, APPENDIX_SHA256),
            Err(Vol3Error::ChecksumMismatch { .. })
        ));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let text = "format vol3-appendix 1\nmatrix x 2\n1, 0\n0\nend\n";
        let err = parse_constants(text, &sha256_hex(text)).unwrap_err();
        assert!(matches!(err, Vol3Error::ConstantsFormat { line: 4, .. }));
        let text = "format vol3-appendix 2\n";
        assert!(parse_constants(text, &sha256_hex(text)).is_err());
    }
}
