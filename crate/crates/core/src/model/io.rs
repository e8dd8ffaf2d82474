//! Plain-text model format.
//!
//! ```text
//! hubo <N>
//! <coeff> <v1> <v2> ... <vk>
//! ```
//!
//! One term per line; a line with a coefficient and no indices is the
//! constant. Blank lines and lines starting with `#` are ignored.
//! Coefficients are written with the shortest round-trip representation, so
//! save/load is value-exact.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::EnergyModel;

pub fn parse_model(text: &str) -> Result<EnergyModel> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `hubo <N>` header"))?;
    let mut head = header.split_whitespace();
    if head.next() != Some("hubo") {
        return Err(Error::parse(lineno, "expected `hubo <N>` header"));
    }
    let n: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(lineno, "header needs a variable count"))?;
    if head.next().is_some() {
        return Err(Error::parse(lineno, "trailing tokens after header"));
    }

    let mut builder = EnergyModel::builder(n);
    for (lineno, line) in lines {
        let mut tok = line.split_whitespace();
        let coeff: f64 = tok
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(lineno, format!("bad coefficient in `{line}`")))?;
        let vars = tok
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad index `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        builder.add_term(coeff, vars).map_err(|e| Error::parse(lineno, e.to_string()))?;
    }
    Ok(builder.build())
}

pub fn write_model(model: &EnergyModel) -> String {
    let mut out = format!("hubo {}\n", model.num_vars());
    if model.constant() != 0.0 {
        let _ = writeln!(out, "{}", model.constant());
    }
    for t in model.terms() {
        let _ = write!(out, "{}", t.coeff);
        for v in t.vars {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_model(path: impl AsRef<Path>) -> Result<EnergyModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_model(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_constant_and_comments() {
        let m = parse_model("# demo\nhubo 3\n2.5\n-1 0 2\n\n0.1 1\n").unwrap();
        assert_eq!(m.constant(), 2.5);
        assert_eq!(m.num_terms(), 2);
        assert_eq!(m.energy(&[1, 1, 1]).unwrap(), 2.5 - 1.0 + 0.1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_model("").is_err());
        assert!(parse_model("qubo 3\n").is_err());
        assert!(parse_model("hubo 2\n1 2\n").is_err());
        assert!(parse_model("hubo 2\nx 1\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_value_exact(
            terms in prop::collection::vec((-1e6f64..1e6, prop::collection::vec(0usize..6, 0..4)), 0..20)
        ) {
            let mut b = EnergyModel::builder(6);
            for (c, vars) in &terms {
                b.add_term(*c, vars.iter().copied()).unwrap();
            }
            let m = b.build();
            let back = parse_model(&write_model(&m)).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
