//! Finitely generated abelian groups, homomorphisms between them, and
//! quotients by images computed through the Smith normal form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cyclic summand: `Z` (modulus 0) or `Z_n`. A free summand may carry a
/// scale label, so that `2Z` (scale 2) is kept apart from `Z` when printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub modulus: u64,
    pub scale: u64,
}

impl CyclicFactor {
    pub const Z: CyclicFactor = CyclicFactor { modulus: 0, scale: 1 };
    pub const TWO_Z: CyclicFactor = CyclicFactor { modulus: 0, scale: 2 };
    pub const Z2: CyclicFactor = CyclicFactor { modulus: 2, scale: 1 };

    pub fn cyclic(n: u64) -> Self {
        CyclicFactor { modulus: n, scale: 1 }
    }

    pub fn is_free(&self) -> bool {
        self.modulus == 0
    }

    fn order_key(&self) -> (u8, u64, std::cmp::Reverse<u64>) {
        if self.is_free() {
            (0, 0, std::cmp::Reverse(self.scale))
        } else {
            (1, self.modulus, std::cmp::Reverse(1))
        }
    }
}

impl fmt::Display for CyclicFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.modulus, self.scale) {
            (0, 1) => write!(f, "Z"),
            (0, s) => write!(f, "{s}Z"),
            (n, _) => write!(f, "Z{n}"),
        }
    }
}

/// A direct sum of cyclic factors. The empty sum is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<CyclicFactor>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn z() -> Self {
        Self::from_factors(vec![CyclicFactor::Z])
    }

    pub fn two_z() -> Self {
        Self::from_factors(vec![CyclicFactor::TWO_Z])
    }

    pub fn z2() -> Self {
        Self::from_factors(vec![CyclicFactor::Z2])
    }

    /// Drops trivial factors `Z_1`; keeps the given order.
    pub fn from_factors(factors: Vec<CyclicFactor>) -> Self {
        let factors = factors.into_iter().filter(|f| f.modulus != 1).collect();
        AbelianGroup { factors }
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_free()).count()
    }

    /// `a (+) b`: the factors of `a` followed by those of `b`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }

    /// Free factors first (larger scale first), then torsion by modulus.
    pub fn canonical(&self) -> Self {
        let mut factors = self.factors.clone();
        factors.sort_by_key(|f| f.order_key());
        AbelianGroup { factors }
    }

    /// Isomorphism as abstract groups, ignoring scale labels and order.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let strip = |g: &Self| {
            let mut v: Vec<u64> = g.factors.iter().map(|f| f.modulus).collect();
            v.sort_unstable();
            v
        };
        invariant_form(&strip(self)) == invariant_form(&strip(other))
    }

    /// Compact text form with `+` between summands, as in data files.
    pub fn ascii(&self) -> String {
        self.join("+")
    }

    fn join(&self, sep: &str) -> String {
        if self.factors.is_empty() {
            return "0".into();
        }
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(sep)
    }
}

/// Elementary divisors of a list of cyclic moduli (0 meaning free), grouped
/// back into invariant-factor form so that e.g. `Z2 + Z3` equals `Z6`.
fn invariant_form(moduli: &[u64]) -> Vec<u64> {
    let mut diag: Vec<Vec<i128>> = vec![vec![0; moduli.len()]; moduli.len()];
    for (i, &m) in moduli.iter().enumerate() {
        diag[i][i] = m as i128;
    }
    let mut out: Vec<u64> = invariant_factors(diag).into_iter().filter(|&d| d != 1).map(|d| d as u64).collect();
    let free = moduli.len() - moduli.iter().filter(|&&m| m != 0).count();
    out.retain(|&d| d != 0);
    out.extend(std::iter::repeat_n(0, free));
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.join("⊕"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts `0`, `Z`, `2Z`, `Z2`, `Z_2` and sums joined by `+` or `⊕`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in s.split(['+', '⊕']) {
            let part = part.replace('_', "");
            let f = if part == "Z" {
                CyclicFactor::Z
            } else if let Some(n) = part.strip_prefix('Z') {
                let n: u64 = n.parse().map_err(|_| Error::Parse(format!("bad group factor `{part}`")))?;
                CyclicFactor::cyclic(n)
            } else if let Some(k) = part.strip_suffix('Z') {
                let k: u64 = k.parse().map_err(|_| Error::Parse(format!("bad group factor `{part}`")))?;
                CyclicFactor { modulus: 0, scale: k }
            } else if part == "0" {
                continue;
            } else {
                return Err(Error::Parse(format!("bad group factor `{part}`")));
            };
            factors.push(f);
        }
        Ok(Self::from_factors(factors))
    }
}

/// A homomorphism given by an integer matrix in the generator bases:
/// one row per codomain factor, one column per domain factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl GroupHom {
    /// Validates the shape and well-definedness, then reduces entries modulo
    /// the torsion of the codomain.
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (m, n) = (codomain.rank(), domain.rank());
        if matrix.len() != m || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::IllDefinedHom(format!(
                "matrix shape does not match {domain} -> {codomain}"
            )));
        }
        let mut matrix = matrix;
        for (i, row) in matrix.iter_mut().enumerate() {
            let cm = codomain.factors[i].modulus as i64;
            for (j, a) in row.iter_mut().enumerate() {
                let dm = domain.factors[j].modulus as i64;
                if dm != 0 {
                    let ok = if cm == 0 { *a == 0 } else { (dm * *a).rem_euclid(cm) == 0 };
                    if !ok {
                        return Err(Error::IllDefinedHom(format!(
                            "entry ({i},{j}) = {a} does not respect the relation of {}",
                            domain.factors[j]
                        )));
                    }
                }
                if cm != 0 {
                    *a = a.rem_euclid(cm);
                }
            }
        }
        Ok(GroupHom { domain, codomain, matrix })
    }

    pub fn zero(domain: AbelianGroup, codomain: AbelianGroup) -> Self {
        let matrix = vec![vec![0; domain.rank()]; codomain.rank()];
        GroupHom { domain, codomain, matrix }
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&a| a == 0)
    }

    /// Image of a domain element given in generator coordinates.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.codomain.factors)
            .map(|(row, f)| {
                let v: i64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                if f.modulus == 0 {
                    v
                } else {
                    v.rem_euclid(f.modulus as i64)
                }
            })
            .collect()
    }

    /// Same matrix, read between other groups of the same shape.
    pub fn rebase(&self, domain: AbelianGroup, codomain: AbelianGroup) -> Result<Self> {
        Self::new(domain, codomain, self.matrix.clone())
    }

    /// Text form such as `n->n`, `(n,m)->n+m`, `n->(n,-n)`, or `0`.
    pub fn map_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let m = &self.matrix;
        let sign = |a: i64| if a < 0 { "-" } else { "+" };
        let coef = |a: i64| match a.abs() {
            1 => String::new(),
            k => k.to_string(),
        };
        match (m.len(), m[0].len()) {
            (1, 1) => {
                let a = m[0][0];
                format!("n->{}{}n", if a < 0 { "-" } else { "" }, coef(a))
            }
            (1, 2) if m[0][0] == 1 => format!("(n,m)->n{}{}m", sign(m[0][1]), coef(m[0][1])),
            (2, 1) if m[0][0] == 1 => {
                format!("n->(n,{}{}n)", if m[1][0] < 0 { "-" } else { "" }, coef(m[1][0]))
            }
            _ => format!("{:?}", m),
        }
    }

    /// Parses the text form produced by [`GroupHom::map_string`].
    pub fn parse_map(s: &str, domain: &AbelianGroup, codomain: &AbelianGroup) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace('↦', "->").replace('−', "-");
        let bad = || Error::Parse(format!("unrecognised map `{s}` for {domain} -> {codomain}"));
        let matrix: Vec<Vec<i64>> = if s == "0" || s == "n->0" {
            vec![vec![0; domain.rank()]; codomain.rank()]
        } else if let Some(rhs) = s.strip_prefix("n->(") {
            let rhs = rhs.strip_suffix(')').ok_or_else(bad)?;
            rhs.split(',').map(|t| parse_coef(t, 'n').map(|c| vec![c])).collect::<Option<_>>().ok_or_else(bad)?
        } else if let Some(rhs) = s.strip_prefix("(n,m)->") {
            let (a, b) = split_signed(rhs).ok_or_else(bad)?;
            vec![vec![parse_coef(a, 'n').ok_or_else(bad)?, parse_coef(&b, 'm').ok_or_else(bad)?]]
        } else if let Some(rhs) = s.strip_prefix("n->") {
            vec![vec![parse_coef(rhs, 'n').ok_or_else(bad)?]]
        } else {
            return Err(bad());
        };
        Self::new(domain.clone(), codomain.clone(), matrix)
    }
}

fn parse_coef(t: &str, var: char) -> Option<i64> {
    let t = t.strip_suffix(var)?;
    match t {
        "" | "+" => Some(1),
        "-" => Some(-1),
        _ => t.parse().ok(),
    }
}

/// Splits `n+m` / `n-2m` into the two signed terms.
fn split_signed(s: &str) -> Option<(&str, String)> {
    let pos = s[1..].find(['+', '-'])? + 1;
    Some((&s[..pos], s[pos..].to_string()))
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.domain, self.codomain, self.map_string())
    }
}

/// Smith invariant factors `d_1 | d_2 | ...` of an integer matrix
/// (zeros for the rank deficit are not included).
pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let mut pivot = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in (t + 1)..m {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    let pivot = a[t].clone();
                    for (x, y) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x -= q * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in (t + 1)..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let src = a[i].clone();
                        for (x, y) in a[t][t..].iter_mut().zip(&src[t..]) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            let mut best = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// `target / (im h_1 + im h_2 + ...)`.
///
/// Scale labels of the target survive only when every image is zero.
pub fn quotient_by_images(target: &AbelianGroup, images: &[&GroupHom]) -> Result<AbelianGroup> {
    for h in images {
        if h.codomain() != target {
            return Err(Error::CodomainMismatch(format!("{} is not {}", h.codomain(), target)));
        }
    }
    if images.iter().all(|h| h.is_zero()) {
        return Ok(target.canonical());
    }
    let m = target.rank();
    let mut rel: Vec<Vec<i128>> = vec![Vec::new(); m];
    for (i, f) in target.factors().iter().enumerate() {
        for (r, row) in rel.iter_mut().enumerate() {
            row.push(if r == i { f.modulus as i128 } else { 0 });
        }
    }
    for h in images {
        for j in 0..h.domain().rank() {
            for (i, row) in rel.iter_mut().enumerate() {
                row.push(h.matrix()[i][j] as i128);
            }
        }
    }
    let d = invariant_factors(rel);
    let free = m - d.len();
    let mut factors = vec![CyclicFactor::Z; free];
    let mut torsion: Vec<u64> = d.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect();
    torsion.sort_unstable();
    factors.extend(torsion.into_iter().map(CyclicFactor::cyclic));
    Ok(AbelianGroup::from_factors(factors))
}

/// True when exactly one homomorphism `domain -> codomain` exists.
pub fn hom_is_unique(domain: &AbelianGroup, codomain: &AbelianGroup) -> bool {
    domain.factors().iter().all(|d| {
        codomain.factors().iter().all(|c| match (d.modulus, c.modulus) {
            (0, 0) => false,
            (0, _) => false,
            (_, 0) => true,
            (a, b) => gcd(a, b) == 1,
        })
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn display_forms() {
        assert_eq!(g("Z+Z").to_string(), "Z⊕Z");
        assert_eq!(g("2Z⊕2Z").ascii(), "2Z+2Z");
        assert_eq!(g("Z_2").to_string(), "Z2");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::z().direct_sum(&AbelianGroup::z()).to_string(), "Z⊕Z");
    }

    #[test]
    fn canonical_order_puts_free_first() {
        assert_eq!(g("Z2+Z+2Z").canonical().ascii(), "2Z+Z+Z2");
    }

    #[test]
    fn map_strings_round_trip() {
        let cases = [
            ("Z", "Z2", "n->n"),
            ("Z", "Z", "n->2n"),
            ("Z+Z", "Z", "(n,m)->n+m"),
            ("Z+Z", "Z", "(n,m)->n-m"),
            ("Z", "Z+Z", "n->(n,n)"),
            ("Z", "Z+Z", "n->(n,-n)"),
            ("Z2", "Z2", "0"),
        ];
        for (d, c, s) in cases {
            let h = GroupHom::parse_map(s, &g(d), &g(c)).unwrap();
            assert_eq!(h.map_string(), s);
        }
    }

    #[test]
    fn minus_sign_collapses_mod_two() {
        let h = GroupHom::parse_map("n->(n,-n)", &g("Z2"), &g("Z2+Z2")).unwrap();
        assert_eq!(h.map_string(), "n->(n,n)");
        let h = GroupHom::parse_map("(n,m)->n-m", &g("Z2+Z2"), &g("Z2")).unwrap();
        assert_eq!(h.map_string(), "(n,m)->n+m");
    }

    #[test]
    fn ill_defined_maps_rejected() {
        assert!(GroupHom::new(g("Z2"), g("Z"), vec![vec![1]]).is_err());
        assert!(GroupHom::new(g("Z2"), g("Z"), vec![vec![0]]).is_ok());
        assert!(GroupHom::new(g("Z"), g("Z"), vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let zz = g("Z+Z");
        let diag = GroupHom::parse_map("n->(n,n)", &g("Z"), &zz).unwrap();
        let anti = GroupHom::parse_map("n->(n,-n)", &g("Z"), &zz).unwrap();
        assert_eq!(quotient_by_images(&zz, &[&diag, &diag]).unwrap(), g("Z"));
        assert_eq!(quotient_by_images(&zz, &[&diag, &anti]).unwrap(), g("Z2"));
        let onto = GroupHom::parse_map("(n,m)->n+m", &zz, &g("Z")).unwrap();
        assert_eq!(quotient_by_images(&g("Z"), &[&onto]).unwrap(), AbelianGroup::trivial());
        let zero = GroupHom::zero(g("Z"), g("2Z"));
        assert_eq!(quotient_by_images(&g("2Z"), &[&zero]).unwrap(), g("2Z"));
        let double = GroupHom::parse_map("n->2n", &g("Z"), &g("Z")).unwrap();
        assert_eq!(quotient_by_images(&g("Z"), &[&double]).unwrap(), g("Z2"));
    }

    #[test]
    fn uniqueness_of_homs() {
        assert!(hom_is_unique(&g("Z2"), &g("Z")));
        assert!(hom_is_unique(&g("0"), &g("Z")));
        assert!(!hom_is_unique(&g("Z"), &g("Z2")));
        assert!(!hom_is_unique(&g("Z2"), &g("Z2")));
        assert!(hom_is_unique(&g("Z3"), &g("Z2")));
    }

    #[test]
    fn isomorphism_ignores_scale_and_order() {
        assert!(g("2Z+Z2").is_isomorphic(&g("Z2+Z")));
        assert!(g("Z2+Z3").is_isomorphic(&g("Z6")));
        assert!(!g("Z2+Z2").is_isomorphic(&g("Z4")));
    }
}
