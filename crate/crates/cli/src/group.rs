//! Group expressions: `term ("x" term)*` with `term := "Z" uint | "Z^" uint`.

use nctori_core::arith::factorize;
use nctori_core::wfun::AbelianGroup;

/// Largest cyclic order accepted; factorization is by trial division.
pub const MAX_CYCLIC_ORDER: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position}")]
pub struct GroupParseError {
    /// Zero-based character offset into the original text.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExpr {
    pub source: String,
    pub group: AbelianGroup,
}

impl std::str::FromStr for GroupExpr {
    type Err = GroupParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(GroupExpr { source: s.to_string(), group: parse_group(s)? })
    }
}

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, GroupParseError> {
        Err(GroupParseError { position: self.position(), message: message.into() })
    }

    fn uint(&mut self) -> Result<u64, GroupParseError> {
        let start = self.position();
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = match value.checked_mul(10).and_then(|v| v.checked_add(u64::from(d))) {
                Some(v) => v,
                None => return Err(GroupParseError { position: start, message: "number too large".into() }),
            };
            any = true;
            self.at += 1;
        }
        if !any {
            return self.fail("expected a number");
        }
        Ok(value)
    }
}

pub fn parse_group(text: &str) -> Result<AbelianGroup, GroupParseError> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut cur = Cursor { chars, at: 0, end: text.chars().count() };
    if cur.peek().is_none() {
        return cur.fail("empty group expression");
    }
    let mut torsion = Vec::new();
    let mut free_rank: usize = 0;
    loop {
        if !matches!(cur.peek(), Some('Z' | 'z')) {
            return cur.fail("expected 'Z'");
        }
        cur.at += 1;
        if cur.peek() == Some('^') {
            cur.at += 1;
            let start = cur.position();
            let r = cur.uint()?;
            free_rank = usize::try_from(r)
                .ok()
                .and_then(|r| free_rank.checked_add(r))
                .ok_or(GroupParseError { position: start, message: "free rank too large".into() })?;
        } else {
            let start = cur.position();
            let n = cur.uint()?;
            if n < 2 {
                return Err(GroupParseError { position: start, message: format!("Z{n} is not a nontrivial cyclic group") });
            }
            if n > MAX_CYCLIC_ORDER {
                return Err(GroupParseError { position: start, message: format!("cyclic order exceeds {MAX_CYCLIC_ORDER}") });
            }
            torsion.extend(factorize(n).expect("n >= 2").prime_powers());
        }
        match cur.peek() {
            None => break,
            Some('x' | 'X') => cur.at += 1,
            Some(c) => return cur.fail(format!("unexpected {c:?}")),
        }
    }
    Ok(AbelianGroup::new(torsion, free_rank).expect("prime powers"))
}
