//! Ring and element literals: `Zp(p=2,M=8)`, `Fpt(p=3,M=6)`, `1+2*t^3`.

use std::str::FromStr;

use super::{Elem, Flavor, RingCtx};
use crate::error::{ArtinError, Result};

impl FromStr for RingCtx {
    type Err = ArtinError;

    /// Accepts `Zp(p=2,M=8)`, `Fpt(p=3,M=6)` and the positional forms
    /// `Zp(2,8)` / `Fpt(3,6)`.
    fn from_str(s: &str) -> Result<RingCtx> {
        let bad = |why: &str| ArtinError::InvalidRing(format!("`{s}`: {why}"));
        let s_trim = s.trim();
        let open = s_trim.find('(').ok_or_else(|| bad("expected `(`"))?;
        if !s_trim.ends_with(')') {
            return Err(bad("expected `)`"));
        }
        let flavor = match s_trim[..open].trim() {
            "Zp" => Flavor::PAdic,
            "Fpt" => Flavor::TSeries,
            other => return Err(bad(&format!("unknown ring family `{other}`"))),
        };
        let inner = &s_trim[open + 1..s_trim.len() - 1];
        let mut p = None;
        let mut m = None;
        for (i, part) in inner.split(',').enumerate() {
            let part = part.trim();
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (if i == 0 { "p" } else { "M" }, part),
            };
            let n: u64 = value
                .parse()
                .map_err(|_| bad(&format!("bad number `{value}`")))?;
            match key {
                "p" => p = Some(n),
                "M" => m = Some(n),
                other => return Err(bad(&format!("unknown parameter `{other}`"))),
            }
        }
        let p = p.ok_or_else(|| bad("missing p"))?;
        let m = m.ok_or_else(|| bad("missing M"))?;
        let m = u32::try_from(m).map_err(|_| bad("M too large"))?;
        RingCtx::new(flavor, p, m)
    }
}

impl RingCtx {
    /// Formats an element as an integer (p-adic) or a polynomial in `t`
    /// with increasing degrees (t-series), e.g. `1+2*t^3`.
    pub fn format(&self, x: Elem) -> String {
        match self.flavor {
            Flavor::PAdic => x.code().to_string(),
            Flavor::TSeries => {
                let mut parts = Vec::new();
                for (deg, c) in self.digits(x).into_iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    parts.push(match (deg, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "t".to_string(),
                        (1, c) => format!("{c}*t"),
                        (d, 1) => format!("t^{d}"),
                        (d, c) => format!("{c}*t^{d}"),
                    });
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            }
        }
    }

    /// Parses an element literal: an integer expression, with `t` standing
    /// for the uniformizer (also accepted in p-adic rings, where it is `p`).
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        crate::poly::parse::parse_constant(self, s)
    }

    pub fn format_point(&self, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|x| self.format(*x)).collect()
    }
}
