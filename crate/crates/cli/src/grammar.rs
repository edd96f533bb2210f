//! Small argument grammars: quotients, characters, integer lists, matrices.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct GrammarError(pub String);

type Result<T> = std::result::Result<T, GrammarError>;

/// `gen:image(,gen:image)* mod e1[,e2...]`. An image is an integer for a
/// single factor or a tuple `(x1,x2,...)` with one entry per factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub images: Vec<(String, Vec<i64>)>,
    pub orders: Vec<u64>,
}

/// `e1,e2,... mod L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub exponents: Vec<i64>,
    pub order: u64,
}

fn split_mod(s: &str) -> Result<(&str, &str)> {
    let at = s
        .rfind("mod")
        .ok_or_else(|| GrammarError(format!("`{s}`: expected `... mod n`")))?;
    Ok((s[..at].trim(), s[at + 3..].trim()))
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| GrammarError(format!("`{}` is not an integer", x.trim())))
        })
        .collect()
}

fn parse_orders(s: &str) -> Result<Vec<u64>> {
    let orders = parse_int_list(s)?;
    if orders.is_empty() || orders.iter().any(|&e| e < 1) {
        return Err(GrammarError(format!("`{s}`: orders must be positive integers")));
    }
    Ok(orders.into_iter().map(|e| e as u64).collect())
}

impl std::str::FromStr for QuotientSpec {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = split_mod(s)?;
        let orders = parse_orders(rhs)?;
        let mut images = Vec::new();
        let mut rest = lhs;
        while !rest.is_empty() {
            let colon = rest
                .find(':')
                .ok_or_else(|| GrammarError(format!("`{rest}`: expected `gen:image`")))?;
            let name = rest[..colon].trim();
            if name.is_empty() {
                return Err(GrammarError(format!("`{s}`: missing generator name")));
            }
            let after = rest[colon + 1..].trim_start();
            let (image, tail) = if let Some(inner) = after.strip_prefix('(') {
                let close = inner
                    .find(')')
                    .ok_or_else(|| GrammarError(format!("`{after}`: unclosed `(`")))?;
                (parse_int_list(&inner[..close])?, &inner[close + 1..])
            } else {
                let end = after.find(',').unwrap_or(after.len());
                (parse_int_list(&after[..end])?, &after[end..])
            };
            if image.len() != orders.len() {
                return Err(GrammarError(format!(
                    "image of `{name}` has {} entries for {} factors",
                    image.len(),
                    orders.len()
                )));
            }
            images.push((name.to_string(), image));
            let tail = tail.trim_start();
            rest = match tail.strip_prefix(',') {
                Some(t) => t.trim_start(),
                None if tail.is_empty() => tail,
                None => return Err(GrammarError(format!("`{tail}`: expected `,`"))),
            };
        }
        Ok(QuotientSpec { images, orders })
    }
}

impl std::str::FromStr for CharacterSpec {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = split_mod(s)?;
        let order = parse_orders(rhs)?;
        if order.len() != 1 {
            return Err(GrammarError(format!("`{s}`: a character has a single order")));
        }
        Ok(CharacterSpec {
            exponents: parse_int_list(lhs)?,
            order: order[0],
        })
    }
}

/// One row per line or `;`, entries separated by whitespace or commas,
/// `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for row in line.split(';') {
            let entries: Vec<&str> = row
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            if entries.is_empty() {
                continue;
            }
            let parsed = entries
                .iter()
                .map(|t| t.parse::<i64>().map_err(|_| GrammarError(format!("`{t}` is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
    }
    if rows.is_empty() {
        return Err(GrammarError("matrix is empty".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(GrammarError("matrix rows have different lengths".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_quotient() {
        let q: QuotientSpec = "a:1,b:1 mod 6".parse().unwrap();
        assert_eq!(q.orders, vec![6]);
        assert_eq!(q.images, vec![("a".into(), vec![1]), ("b".into(), vec![1])]);
    }

    #[test]
    fn product_quotient() {
        let q: QuotientSpec = "a:(1,0), b:(0,1) mod 2,4".parse().unwrap();
        assert_eq!(q.orders, vec![2, 4]);
        assert_eq!(q.images[1], ("b".into(), vec![0, 1]));
    }

    #[test]
    fn malformed_quotients() {
        for s in ["a:1,b:1", "a:1 mod 0", "a:(1,0) mod 2", "a 1 mod 2", "a:(1 mod 2", ":1 mod 2", "a:1 b:1 mod 2"] {
            assert!(s.parse::<QuotientSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn characters() {
        let c: CharacterSpec = "1, 5 mod 6".parse().unwrap();
        assert_eq!(c, CharacterSpec { exponents: vec![1, 5], order: 6 });
        assert!("1 mod 2,3".parse::<CharacterSpec>().is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("2 1\n1 1 # cat map\n").unwrap(), vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(parse_matrix("0,-1; 1,0").unwrap(), vec![vec![0, -1], vec![1, 0]]);
        assert!(parse_matrix("1 2\n3").is_err());
        assert!(parse_matrix("# nothing").is_err());
    }
}
