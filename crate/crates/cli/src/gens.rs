//! Generator files: one generator per line, `name kind entries... [| fiber-kind entries...]`.
//!
//! Base kinds: `psl a b c d`, `u t`, `geo lambda`, `rot theta`, `borel alpha beta`.
//! Fiber kinds: `affine m k`, `so3 w x y z`, `circle a b c d`. Lines starting
//! with `#` are comments.

use horoflow::{GeneratedGroup, MoebiusElement, ProductElement, TransverseElement};

use crate::CliError;

fn numbers(line: usize, kind: &str, fields: &[&str], expected: usize) -> Result<Vec<f64>, CliError> {
    if fields.len() != expected {
        return Err(CliError::Usage(format!(
            "line {line}: `{kind}` takes {expected} numbers, got {}",
            fields.len()
        )));
    }
    fields
        .iter()
        .map(|t| match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::Usage(format!("line {line}: bad number `{t}`"))),
        })
        .collect()
}

fn base(line: usize, kind: &str, fields: &[&str]) -> Result<MoebiusElement, CliError> {
    let err = |e: horoflow::MoebiusError| CliError::Usage(format!("line {line}: {e}"));
    Ok(match kind {
        "psl" => {
            let v = numbers(line, kind, fields, 4)?;
            MoebiusElement::new(v[0], v[1], v[2], v[3]).map_err(err)?
        }
        "u" => MoebiusElement::unipotent(numbers(line, kind, fields, 1)?[0]),
        "geo" => MoebiusElement::diagonal(numbers(line, kind, fields, 1)?[0]).map_err(err)?,
        "rot" => MoebiusElement::rotation(numbers(line, kind, fields, 1)?[0]),
        "borel" => {
            let v = numbers(line, kind, fields, 2)?;
            MoebiusElement::borel(v[0], v[1]).map_err(err)?
        }
        other => return Err(CliError::Usage(format!("line {line}: unknown generator kind `{other}`"))),
    })
}

fn fiber(line: usize, kind: &str, fields: &[&str]) -> Result<TransverseElement, CliError> {
    Ok(match kind {
        "affine" => {
            let v = numbers(line, kind, fields, 2)?;
            TransverseElement::affine(v[0], v[1]).map_err(|e| CliError::Usage(format!("line {line}: {e}")))?
        }
        "so3" => {
            let v = numbers(line, kind, fields, 4)?;
            if v.iter().all(|x| *x == 0.0) {
                return Err(CliError::Usage(format!("line {line}: zero quaternion")));
            }
            TransverseElement::rotation(v[0], v[1], v[2], v[3])
        }
        "circle" => TransverseElement::Circle(base(line, "psl", fields)?),
        other => return Err(CliError::Usage(format!("line {line}: unknown fiber kind `{other}`"))),
    })
}

pub fn parse_generators(text: &str) -> Result<GeneratedGroup, CliError> {
    let mut gens = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, tail) = match content.split_once('|') {
            Some((h, t)) => (h, Some(t)),
            None => (content, None),
        };
        let fields: Vec<&str> = head.split_whitespace().collect();
        let [name, kind, rest @ ..] = fields.as_slice() else {
            return Err(CliError::Usage(format!("line {line}: expected `name kind entries...`")));
        };
        let m = base(line, kind, rest)?;
        let g = match tail {
            None => TransverseElement::Trivial,
            Some(t) => {
                let f: Vec<&str> = t.split_whitespace().collect();
                let [fkind, frest @ ..] = f.as_slice() else {
                    return Err(CliError::Usage(format!("line {line}: empty fiber after `|`")));
                };
                fiber(line, fkind, frest)?
            }
        };
        gens.push((name.to_string(), ProductElement::new(m, g)));
    }
    GeneratedGroup::new(gens).map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_kinds() {
        let g = parse_generators("# modular\nT psl 1 1 0 1\nS psl 0 -1 1 0\n").unwrap();
        assert_eq!(g.generators().len(), 2);
        let g = parse_generators("a u 0.5 | affine 1 0.2\nh geo 2 | affine 0.25 0\n").unwrap();
        assert_eq!(g.generators()[1].1.base.a(), 2.0);
        let g = parse_generators("p rot 1 | so3 1 0 0 1\nq borel 2 1 | so3 0 1 0 0\n").unwrap();
        assert_eq!(g.generators().len(), 2);
        assert!(parse_generators("c psl 2 1 1 1 | circle 2 1 1 1").is_ok());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "T psl 1 1 0",
            "T psl 1 1 0 x",
            "T spin 1",
            "T",
            "T psl 2 0 0 2",
            "T u 1 |",
            "T u 1 | affine -1 0",
            "T u 1 | so3 0 0 0 0",
            "T u 1 | warp 1",
            "a u 1\nb u 1 | affine 1 1",
            "e u 0",
        ] {
            assert!(parse_generators(bad).is_err(), "{bad}");
        }
    }
}
