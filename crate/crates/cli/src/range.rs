//! Integer value lists from `3`, `0..2` (inclusive) or `1,4..5`.

use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueRange(pub Vec<u32>);

impl ValueRange {
    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

impl FromStr for ValueRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        };
        let mut out = Vec::new();
        for piece in s.split(',') {
            match piece.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                    if a > b {
                        return Err(format!("empty range `{piece}`"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(num(piece)?),
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(ValueRange(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let r = |s: &str| s.parse::<ValueRange>().map(|v| v.0);
        assert_eq!(r("3"), Ok(vec![3]));
        assert_eq!(r("0..2"), Ok(vec![0, 1, 2]));
        assert_eq!(r("0..=1"), Ok(vec![0, 1]));
        assert_eq!(r("4,1..2,2"), Ok(vec![1, 2, 4]));
        assert!(r("2..1").is_err());
        assert!(r("x").is_err());
        assert!(r("-1").is_err());
    }
}
