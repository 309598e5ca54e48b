//! Parser for lattice expressions such as `H(2)+A1^7` or `<2>+<-2>+A1^8`.
//!
//! Grammar: `sum := term ('+' term)*`, `term := atom ('(' int ')')? ('^' int)?`,
//! `atom := H | N | A<n> | D<m> | E<k> | '<' int '>'`. The symbol `⊕` may
//! replace `+`, and `⟨ ⟩` may replace `< >`.

use super::{Lattice, LatticeError};

pub fn parse_lattice(src: &str) -> Result<Lattice, LatticeError> {
    let cleaned: String = src
        .replace('⊕', "+")
        .replace('⟨', "<")
        .replace('⟩', ">")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let err = |m: &str| LatticeError::Parse(src.to_string(), m.to_string());
    if cleaned.is_empty() {
        return Err(err("empty expression"));
    }
    let mut out: Option<Lattice> = None;
    for term in split_terms(&cleaned) {
        let l = parse_term(term).map_err(|m| err(&m))?;
        out = Some(match out {
            None => l,
            Some(acc) => acc.sum(&l),
        });
    }
    Ok(out.unwrap())
}

// splits on '+' outside of <...>, so "<+2>" style signs survive
fn split_terms(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' | '(' => depth += 1,
            '>' | ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_int(s: &str) -> Result<i64, String> {
    s.parse::<i64>().map_err(|_| format!("bad integer `{s}`"))
}

fn parse_term(t: &str) -> Result<Lattice, String> {
    if t.is_empty() {
        return Err("empty summand".into());
    }
    let (body, power) = match t.rfind('^') {
        Some(i) if !t[i..].contains('>') && !t[i..].contains(')') => (&t[..i], Some(parse_int(&t[i + 1..])?)),
        _ => (t, None),
    };
    let (atom, scale) = if body.ends_with(')') {
        let open = body.rfind('(').ok_or("unbalanced parenthesis")?;
        (&body[..open], Some(parse_int(&body[open + 1..body.len() - 1])?))
    } else {
        (body, None)
    };
    let mut l = parse_atom(atom)?;
    if let Some(s) = scale {
        l = l.rescale(s).map_err(|e| e.to_string())?;
    }
    if let Some(p) = power {
        if p < 1 {
            return Err("power must be positive".into());
        }
        l = l.power(p as usize);
    }
    Ok(l)
}

fn parse_atom(a: &str) -> Result<Lattice, String> {
    let idx = |s: &str| s.parse::<usize>().map_err(|_| format!("bad index in `{a}`"));
    let res = match a {
        "H" | "U" => Ok(Lattice::hyperbolic_plane()),
        "N" => Ok(Lattice::nikulin()),
        _ if a.starts_with('<') && a.ends_with('>') => Lattice::diag(parse_int(&a[1..a.len() - 1])?),
        _ if a.starts_with('A') => Lattice::a(idx(&a[1..])?),
        _ if a.starts_with('D') => Lattice::d(idx(&a[1..])?),
        _ if a.starts_with('E') => Lattice::e(idx(&a[1..])?),
        _ => return Err(format!("unknown lattice `{a}`")),
    };
    res.map_err(|e| e.to_string())
}
