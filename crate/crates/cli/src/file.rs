//! The text function-file format:
//!
//! ```text
//! n=4
//! family=c2;m=2
//! modulus=10011
//! generator=x
//! tt=<2^n/4 lowercase hex digits, most significant first>
//! ```

use polarbool::{FieldSpec, TruthTable};

use crate::error::{CliError, CliResult};

const KEYS: [&str; 5] = ["n", "family", "modulus", "generator", "tt"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFile {
    pub n: u32,
    pub family: String,
    pub modulus: u32,
    pub generator: String,
    pub tt: TruthTable,
}

impl FunctionFile {
    pub fn new(spec: &FieldSpec, family: String, tt: TruthTable) -> Self {
        Self {
            n: tt.n(),
            family,
            modulus: spec.modulus(),
            generator: "x".into(),
            tt,
        }
    }

    pub fn render(&self) -> String {
        format!(
            "n={}\nfamily={}\nmodulus={:b}\ngenerator={}\ntt={}\n",
            self.n,
            self.family,
            self.modulus,
            self.generator,
            self.tt.to_hex()
        )
    }

    /// Parses a file; `origin` names the source in error messages.
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        let err = |line: usize, column: usize, message: String| CliError::Parse {
            path: origin.to_string(),
            line,
            column,
            message,
        };
        let mut values: [Option<(usize, &str)>; 5] = [None; 5];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = raw.split_once('=') else {
                return Err(err(line, 1, "expected key=value".into()));
            };
            let Some(slot) = KEYS.iter().position(|k| *k == key) else {
                return Err(err(line, 1, format!("unknown key {key:?}")));
            };
            if values[slot].is_some() {
                return Err(err(line, 1, format!("duplicate key {key:?}")));
            }
            values[slot] = Some((line, value));
        }
        let mut get = |slot: usize| {
            values[slot].take().ok_or_else(|| {
                err(
                    text.lines().count() + 1,
                    1,
                    format!("missing key {:?}", KEYS[slot]),
                )
            })
        };
        let (n_line, n_text) = get(0)?;
        let (_, family) = get(1)?;
        let (mod_line, mod_text) = get(2)?;
        let (_, generator) = get(3)?;
        let (tt_line, tt_text) = get(4)?;

        let n: u32 = n_text
            .parse()
            .map_err(|_| err(n_line, 3, format!("invalid n {n_text:?}")))?;
        let modulus = u32::from_str_radix(mod_text, 2).map_err(|_| {
            err(
                mod_line,
                9,
                format!("modulus must be binary, got {mod_text:?}"),
            )
        })?;
        let spec = FieldSpec::with_modulus(modulus).map_err(|e| err(mod_line, 9, e.to_string()))?;
        if spec.n() != n {
            return Err(err(
                mod_line,
                9,
                format!("modulus has degree {} but n = {n}", spec.n()),
            ));
        }
        if let Some(pos) = tt_text.find(|c: char| !matches!(c, '0'..='9' | 'a'..='f')) {
            return Err(err(tt_line, 4 + pos, "expected lowercase hex digit".into()));
        }
        let tt = TruthTable::from_hex(n, tt_text).map_err(|e| err(tt_line, 4, e.to_string()))?;
        Ok(Self {
            n,
            family: family.to_string(),
            modulus,
            generator: generator.to_string(),
            tt,
        })
    }

    pub fn field(&self) -> CliResult<FieldSpec> {
        Ok(FieldSpec::with_modulus(self.modulus)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polarbool::constructions::construction2;
    use polarbool::make_field;

    #[test]
    fn round_trip() {
        let spec = make_field(4).unwrap();
        let tt = construction2(&spec).unwrap();
        let file = FunctionFile::new(&spec, "c2;m=2".into(), tt.clone());
        let text = file.render();
        assert!(text.starts_with("n=4\nfamily=c2;m=2\nmodulus=10011\ngenerator=x\ntt="));
        assert_eq!(FunctionFile::parse(&text, "mem").unwrap(), file);
    }

    #[test]
    fn errors_carry_positions() {
        let good = "n=4\nfamily=x\nmodulus=10011\ngenerator=x\ntt=8021\n";
        assert!(FunctionFile::parse(good, "mem").is_ok());
        let cases = [
            ("n=4\nfamily=x\nmodulus=10011\ngenerator=x\ntt=80G1\n", 5, 6),
            (
                "n=4\nfamily=x\nmodulus=10011\ngenerator=x\ntt=80211\n",
                5,
                4,
            ),
            ("n=4\nfamily=x\nmodulus=11111\ngenerator=x\ntt=8021\n", 3, 9),
            ("n=6\nfamily=x\nmodulus=10011\ngenerator=x\ntt=8021\n", 3, 9),
            ("n=4\nfamily=x\nmodulus=10011\nbogus\ntt=8021\n", 4, 1),
            ("n=4\nn=4\n", 2, 1),
        ];
        for (text, line, column) in cases {
            match FunctionFile::parse(text, "f") {
                Err(CliError::Parse {
                    line: l, column: c, ..
                }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            FunctionFile::parse("n=4\n", "f"),
            Err(CliError::Parse { .. })
        ));
    }
}
