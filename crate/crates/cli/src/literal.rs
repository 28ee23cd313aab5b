//! Algebra literals such as `e1`, `0.6e1+0.8e2`, `0.3-0.2e1`, `-e12` or `i+k`.
//!
//! A term is an optional sign, an optional plain decimal coefficient, an optional `*`, and an
//! optional blade `e<indices>` (indices strictly increasing, one digit each) or one of the
//! quaternion units `i`, `j`, `k`.

use hyperslice::{Error, Multivector, Result, SliceStructure};

fn blade_mask(indices: &str, n: usize) -> Result<usize> {
    let mut mask = 0usize;
    let mut last = 0u32;
    for ch in indices.chars() {
        let d = ch
            .to_digit(10)
            .ok_or_else(|| Error::Parse(format!("bad blade index `{ch}`")))?;
        if d == 0 || d as usize > n || d <= last {
            return Err(Error::Parse(format!(
                "blade e{indices} needs increasing indices in 1..={n}"
            )));
        }
        mask |= 1 << (d - 1);
        last = d;
    }
    if mask == 0 {
        return Err(Error::Parse("blade `e` needs indices".into()));
    }
    Ok(mask)
}

fn parse_term(term: &str, n: usize) -> Result<(f64, usize)> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1.0, &term[1..]),
        Some(b'+') => (1.0, &term[1..]),
        _ => (1.0, term),
    };
    let body = body.trim();
    let quaternion_unit = |c: &str| match c {
        "i" => Some(0b01),
        "j" => Some(0b10),
        "k" => Some(0b11),
        _ => None,
    };
    let (coeff_text, mask) = if let Some(pos) = body.find(['e', 'i', 'j', 'k']) {
        let (c, b) = body.split_at(pos);
        let mask = match quaternion_unit(b) {
            Some(m) if n >= 2 => m,
            Some(_) => return Err(Error::Parse(format!("`{b}` needs n >= 2"))),
            None => blade_mask(&b[1..], n)?,
        };
        (c.trim_end_matches('*').trim(), mask)
    } else {
        (body, 0)
    };
    let coeff = if coeff_text.is_empty() {
        if mask == 0 {
            return Err(Error::Parse(format!("empty term in `{term}`")));
        }
        1.0
    } else {
        coeff_text
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad coefficient `{coeff_text}`")))?
    };
    Ok((sign * coeff, mask))
}

/// Parses a literal into `R_n`.
pub fn parse_multivector(text: &str, structure: &SliceStructure) -> Result<Multivector> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&text[start..i]);
            start = i;
        }
    }
    terms.push(&text[start..]);

    let mut coeffs = vec![0.0; structure.context().dim()];
    for t in terms {
        let (c, mask) = parse_term(t, structure.n())?;
        coeffs[mask] += c;
    }
    Multivector::new(structure.context().clone(), coeffs)
}

/// Parses and normalizes a slice axis, which must then lie in the structure's sphere.
pub fn parse_axis(text: &str, structure: &SliceStructure) -> Result<Multivector> {
    let m = parse_multivector(text, structure)?;
    let norm = m.norm();
    if norm == 0.0 {
        return Err(Error::Parse(format!("axis `{text}` is zero")));
    }
    let axis = m.scale(1.0 / norm);
    structure.check_axis(&axis)?;
    Ok(axis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blades_and_combinations() {
        let q = SliceStructure::quaternion();
        let m = parse_multivector("0.3-0.2e1", &q).unwrap();
        assert_eq!(m.coeffs(), &[0.3, -0.2, 0.0, 0.0]);
        assert_eq!(parse_multivector("-e12", &q).unwrap().coeffs(), &[0.0, 0.0, 0.0, -1.0]);
        assert_eq!(parse_multivector("i + 2*k", &q).unwrap().coeffs(), &[0.0, 1.0, 0.0, 2.0]);
        assert_eq!(parse_multivector("1", &q).unwrap(), q.one());
    }

    #[test]
    fn axis_is_normalized() {
        let p = SliceStructure::paravector(3).unwrap();
        let a = parse_axis("0.6e1+0.8e2", &p).unwrap();
        assert!((a.get(1) - 0.6).abs() < 1e-15 && (a.get(2) - 0.8).abs() < 1e-15);
        let b = parse_axis("e1+e2", &p).unwrap();
        assert!((b.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_literals() {
        let p = SliceStructure::paravector(2).unwrap();
        assert!(parse_multivector("e3", &p).is_err());
        assert!(parse_multivector("e21", &p).is_err());
        assert!(parse_multivector("x", &p).is_err());
        assert!(parse_multivector("", &p).is_err());
        assert!(parse_axis("e12", &p).is_err());
        assert!(parse_axis("1", &p).is_err());
    }
}
