//! Plain-text formats shared by the command-line tool.
//!
//! Matrix:
//! ```text
//! rows cols
//! re im  re im ...      (rows*cols pairs, row-major, any whitespace)
//! ```
//! Circuit (0-based mode indices, angles in radians):
//! ```text
//! width=<n>
//! BS <i> <j> <theta> <phi>
//! PS <i> <phi>
//! ```
//! Amplitudes (starred):
//! ```text
//! n=<width>
//! re im
//! ```
//! Blank lines and lines starting with `#` are ignored in circuit and
//! amplitude files. Numbers are written with 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::elements::OpticalElement;
use crate::engine::AmplitudeVector;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::synthesis::Circuit;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token.parse().map_err(|_| parse_err(line, format!("invalid number '{token}'")))?;
    if !x.is_finite() {
        return Err(parse_err(line, format!("non-finite number '{token}'")));
    }
    Ok(x)
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| parse_err(line, format!("invalid index '{token}'")))
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let (no, l) = line.ok_or_else(|| parse_err(1, format!("missing '{key}=' header")))?;
    let value = l
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .ok_or_else(|| parse_err(no, format!("expected '{key}=<n>', got '{l}'")))?;
    parse_usize(value.trim(), no)
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let dims: Vec<&str> = first.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(first_no + 1, "expected 'rows cols'"));
    }
    let rows = parse_usize(dims[0], first_no + 1)?;
    let cols = parse_usize(dims[1], first_no + 1)?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(first_no + 1, "matrix dimensions must be positive"));
    }

    let mut values = Vec::with_capacity(2 * rows * cols);
    let mut last_line = first_no + 1;
    for (no, l) in lines {
        for token in l.split_whitespace() {
            values.push(parse_f64(token, no + 1)?);
        }
        last_line = no + 1;
    }
    if values.len() != 2 * rows * cols {
        return Err(parse_err(
            last_line,
            format!("expected {} numbers for a {rows}x{cols} matrix, got {}", 2 * rows * cols, values.len()),
        ));
    }
    let entries = values.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
    ComplexMatrix::new(rows, cols, entries)
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.to_rows() {
        let line: Vec<String> = row.iter().map(|z| format!("{} {}", fmt_f64(z.re), fmt_f64(z.im))).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let width = parse_header(lines.next(), "width")?;
    let mut circuit = Circuit::new(width).map_err(|e| parse_err(1, e.to_string()))?;
    for (no, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        let element = match tokens.as_slice() {
            ["BS", i, j, theta, phi] => OpticalElement::beamsplitter(
                parse_usize(i, no)?,
                parse_usize(j, no)?,
                parse_f64(theta, no)?,
                parse_f64(phi, no)?,
            ),
            ["PS", i, phi] => OpticalElement::phaseshifter(parse_usize(i, no)?, parse_f64(phi, no)?),
            _ => return Err(parse_err(no, format!("expected 'BS i j theta phi' or 'PS i phi', got '{l}'"))),
        };
        circuit.push(element).map_err(|e| parse_err(no, e.to_string()))?;
    }
    Ok(circuit)
}

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = format!("width={}\n", c.width());
    for e in c.elements() {
        match *e {
            OpticalElement::BeamSplitter { modes: (i, j), theta, phi } => {
                writeln!(out, "BS {i} {j} {} {}", fmt_f64(theta), fmt_f64(phi)).unwrap();
            }
            OpticalElement::PhaseShifter { mode, phi } => {
                writeln!(out, "PS {mode} {}", fmt_f64(phi)).unwrap();
            }
        }
    }
    out
}

pub fn parse_amplitudes(text: &str) -> Result<AmplitudeVector> {
    let mut lines = content_lines(text);
    let width = parse_header(lines.next(), "n")?;
    let mut starred = Vec::with_capacity(width);
    let mut last = 1;
    for (no, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        let [re, im] = tokens.as_slice() else {
            return Err(parse_err(no, format!("expected 're im', got '{l}'")));
        };
        starred.push(Complex64::new(parse_f64(re, no)?, parse_f64(im, no)?));
        last = no;
    }
    if starred.len() != width {
        return Err(parse_err(last, format!("header says {width} amplitudes, found {}", starred.len())));
    }
    AmplitudeVector::from_starred(starred).map_err(|e| parse_err(1, e.to_string()))
}

pub fn format_amplitudes(a: &AmplitudeVector) -> String {
    let mut out = format!("n={}\n", a.width());
    for z in a.starred() {
        writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im)).unwrap();
    }
    out
}

/// `re,im` as a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    match parse_complex_list(s)?.as_slice() {
        [z] => Ok(*z),
        _ => Err(parse_err(1, format!("expected one complex number 're,im', got '{s}'"))),
    }
}

/// Complex numbers from `re,im` pairs separated by `,` or `;`, e.g.
/// `1,0;-1,0` or `1,0,-1,0`.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    let values: Vec<f64> = s
        .split([',', ';'])
        .map(str::trim)
        .map(|t| parse_f64(t, 1))
        .collect::<Result<_>>()?;
    if values.is_empty() || !values.len().is_multiple_of(2) {
        return Err(parse_err(1, format!("expected 're,im' pairs, got '{s}'")));
    }
    Ok(values.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&read_to_string(path)?)
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    parse_circuit(&read_to_string(path)?)
}

pub fn read_amplitudes(path: &Path) -> Result<AmplitudeVector> {
    parse_amplitudes(&read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_parsing_accepts_scientific_and_free_layout() {
        let m = parse_matrix("2 2\n1e0 0  0 -2.5E-1\n0 0\n  1.0 3e+2\n").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(0.0, -0.25));
        assert_eq!(m[(1, 1)], Complex64::new(1.0, 300.0));
    }

    #[test]
    fn matrix_parse_errors() {
        assert!(matches!(parse_matrix(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("2 2\n1 0 0 0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("1 1\n1 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("1 1\n1 nan"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn circuit_text() {
        let text = "width=3\n# comment\nBS 0 2 0.5 -1.25\n\nPS 1 3.0e-1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(
            c.elements(),
            &[OpticalElement::beamsplitter(0, 2, 0.5, -1.25), OpticalElement::phaseshifter(1, 0.3)]
        );
        let written = format_circuit(&c);
        assert!(written.starts_with("width=3\nBS 0 2 5.0000000000000000e-1 -1.2500000000000000e0\n"));
        assert_eq!(parse_circuit(&written).unwrap(), c);
    }

    #[test]
    fn circuit_parse_errors() {
        assert!(parse_circuit("").is_err());
        assert!(parse_circuit("width=2\nBS 0 2 0 0\n").is_err());
        assert!(parse_circuit("width=2\nXX 0\n").is_err());
        assert!(parse_circuit("w=2\n").is_err());
    }

    #[test]
    fn amplitude_text() {
        let a = parse_amplitudes("n=2\n1 0\n-0.5 2e-3\n").unwrap();
        assert_eq!(a.starred()[1], Complex64::new(-0.5, 0.002));
        assert!(parse_amplitudes("n=3\n1 0\n").is_err());
        assert!(parse_amplitudes("n=1\n1 0 0\n").is_err());
    }

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("1,-2").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex_list("1,0;-1,0").unwrap().len(), 2);
        assert_eq!(parse_complex_list("1,0,0,0").unwrap(), vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("1,0,2,0").is_err());
    }

    proptest! {
        #[test]
        fn matrix_text_round_trips_exactly(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-1e6f64..1e6, 32),
        ) {
            let entries = (0..rows * cols).map(|i| Complex64::new(seed[2 * i] / 7.0, seed[2 * i + 1] * 1e-9)).collect();
            let m = ComplexMatrix::new(rows, cols, entries).unwrap();
            prop_assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        }

        #[test]
        fn amplitude_text_round_trips_exactly(values in proptest::collection::vec(-1e3f64..1e3, 2..20)) {
            let starred: Vec<Complex64> = values.chunks_exact(2).map(|p| Complex64::new(p[0], p[1] / 3.0)).collect();
            let a = AmplitudeVector::from_starred(starred).unwrap();
            prop_assert_eq!(parse_amplitudes(&format_amplitudes(&a)).unwrap(), a);
        }
    }
}
