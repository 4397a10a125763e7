//! OEIS b-file exchange format: one `n value` pair per line, LF endings.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::sequences::SequenceTable;

pub fn write_bfile<W: Write>(mut out: W, table: &SequenceTable) -> io::Result<()> {
    for (n, v) in table.iter() {
        writeln!(out, "{n} {v}")?;
    }
    out.flush()
}

pub fn to_bfile_string(table: &SequenceTable) -> String {
    let mut buf = Vec::new();
    write_bfile(&mut buf, table).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII output")
}

/// Parses `n value` pairs. Blank lines and `#` comments are skipped, as
/// published b-files sometimes carry them.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: idx + 1,
            msg: format!("{msg}: {raw:?}"),
        };
        let mut fields = line.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected two fields"));
        };
        let n = n.parse().map_err(|_| err("bad index"))?;
        let v = v.parse().map_err(|_| err("bad value"))?;
        out.push((n, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Generator;
    use crate::sequences::{a_table, f_table};
    use proptest::prelude::*;

    #[test]
    fn format_is_plain_pairs() {
        let t = f_table(3, Generator::Orbit, 1).unwrap();
        assert_eq!(to_bfile_string(&t), "0 1\n1 1\n2 2\n3 2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_bfile("# c\n\n1 2\n").unwrap(), vec![(1, 2)]);
        assert!(matches!(
            parse_bfile("1 2\n3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_bfile("1 2 3\n").is_err());
        assert!(parse_bfile("x 2\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(max in 1u64..300) {
            let t = a_table(max);
            let parsed = parse_bfile(&to_bfile_string(&t)).unwrap();
            prop_assert_eq!(parsed, t.iter().collect::<Vec<_>>());
        }
    }
}
