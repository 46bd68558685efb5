//! Constructors for the groups used in computations, and the two text formats
//! that describe them: symbolic descriptors and multiplication-table files.
//!
//! Descriptor grammar:
//!
//! ```text
//! trivial:<p>        the group of order 1 (prime p)
//! cyclic:<n>         cyclic group of order n, n a power of an odd prime
//! elab:<p>:<r>       elementary abelian group of order p^r
//! xsp:<p>            extraspecial group of order p^3 and exponent p (Heisenberg)
//! xspm:<p>           extraspecial group of order p^3 and exponent p^2
//! wreath:<p>         the wreath product C_p ≀ C_p, of order p^(p+1)
//! prod:<d1>,<d2>,…   direct product of the comma-separated factors
//! ```
//!
//! Table file:
//!
//! ```text
//! p <prime>
//! order <n>
//! <n lines of n integers: row a is the products a·0 … a·(n-1)>
//! ```
//!
//! Blank lines and `#` comments are ignored.

use super::{is_odd_prime, log_p, FiniteGroup, MAX_TABLE_ORDER};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Trivial(u32),
    Cyclic(usize),
    ElementaryAbelian { p: u32, rank: u32 },
    Extraspecial(u32),
    ExtraspecialExpP2(u32),
    Wreath(u32),
    Product(Vec<GroupDescriptor>),
}

fn bad(desc: &str, why: impl Into<String>) -> Error {
    Error::Descriptor(desc.to_string(), why.into())
}

fn parse_num<T: FromStr>(desc: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| bad(desc, format!("`{s}` is not a number")))
}

fn check_prime(desc: &str, p: u32) -> Result<u32> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    if !is_odd_prime(p as u64) {
        return Err(bad(desc, format!("{p} is not an odd prime")));
    }
    Ok(p)
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').ok_or_else(|| bad(s, "expected `<kind>:<args>`"))?;
        match head {
            "trivial" => Ok(Self::Trivial(check_prime(s, parse_num(s, rest)?)?)),
            "cyclic" => {
                let n: usize = parse_num(s, rest)?;
                if n < 2 {
                    return Err(bad(s, "cyclic order must be at least 3; use trivial:<p>"));
                }
                if n > MAX_TABLE_ORDER {
                    return Err(Error::SizeBound {
                        order: n,
                        bound: MAX_TABLE_ORDER,
                    });
                }
                let p = smallest_prime_factor(n);
                check_prime(s, p as u32)?;
                if log_p(n, p as u32).is_none() {
                    return Err(bad(s, format!("{n} is not a prime power")));
                }
                Ok(Self::Cyclic(n))
            }
            "elab" => {
                let (p, r) = rest.split_once(':').ok_or_else(|| bad(s, "expected elab:<p>:<rank>"))?;
                let p = check_prime(s, parse_num(s, p)?)?;
                let rank: u32 = parse_num(s, r)?;
                if rank == 0 {
                    return Err(bad(s, "rank must be positive; use trivial:<p>"));
                }
                Ok(Self::ElementaryAbelian { p, rank })
            }
            "xsp" => Ok(Self::Extraspecial(check_prime(s, parse_num(s, rest)?)?)),
            "xspm" => Ok(Self::ExtraspecialExpP2(check_prime(s, parse_num(s, rest)?)?)),
            "wreath" => Ok(Self::Wreath(check_prime(s, parse_num(s, rest)?)?)),
            "prod" => {
                let factors = rest
                    .split(',')
                    .map(|f| f.parse())
                    .collect::<Result<Vec<GroupDescriptor>>>()?;
                if factors.len() < 2 {
                    return Err(bad(s, "a product needs at least two factors"));
                }
                if factors.iter().any(|f| matches!(f, Self::Product(_))) {
                    return Err(bad(s, "nested products are written flat"));
                }
                Ok(Self::Product(factors))
            }
            other => Err(bad(s, format!("unknown kind `{other}`"))),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial(p) => write!(f, "trivial:{p}"),
            Self::Cyclic(n) => write!(f, "cyclic:{n}"),
            Self::ElementaryAbelian { p, rank } => write!(f, "elab:{p}:{rank}"),
            Self::Extraspecial(p) => write!(f, "xsp:{p}"),
            Self::ExtraspecialExpP2(p) => write!(f, "xspm:{p}"),
            Self::Wreath(p) => write!(f, "wreath:{p}"),
            Self::Product(fs) => {
                write!(f, "prod:")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

fn checked_pow(p: u32, k: u32) -> Result<usize> {
    let n = (p as usize)
        .checked_pow(k)
        .filter(|&n| n <= MAX_TABLE_ORDER)
        .ok_or(Error::SizeBound {
            order: usize::MAX,
            bound: MAX_TABLE_ORDER,
        })?;
    Ok(n)
}

impl GroupDescriptor {
    pub fn prime(&self) -> u32 {
        match self {
            Self::Trivial(p)
            | Self::Extraspecial(p)
            | Self::ExtraspecialExpP2(p)
            | Self::Wreath(p)
            | Self::ElementaryAbelian { p, .. } => *p,
            Self::Cyclic(n) => smallest_prime_factor(*n) as u32,
            Self::Product(fs) => fs[0].prime(),
        }
    }

    /// Group order, computed without building the table.
    pub fn order(&self) -> Option<usize> {
        let p = self.prime() as usize;
        match self {
            Self::Trivial(_) => Some(1),
            Self::Cyclic(n) => Some(*n),
            Self::ElementaryAbelian { rank, .. } => p.checked_pow(*rank),
            Self::Extraspecial(_) | Self::ExtraspecialExpP2(_) => p.checked_pow(3),
            Self::Wreath(_) => p.checked_pow(p as u32 + 1),
            Self::Product(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let order = self.order().unwrap_or(usize::MAX);
        if order > MAX_TABLE_ORDER {
            return Err(Error::SizeBound {
                order,
                bound: MAX_TABLE_ORDER,
            });
        }
        let g = match self {
            Self::Trivial(p) => FiniteGroup::trivial(*p)?,
            Self::Cyclic(n) => cyclic(*n)?,
            Self::ElementaryAbelian { p, rank } => elementary_abelian(*p, *rank)?,
            Self::Extraspecial(p) => extraspecial(*p)?,
            Self::ExtraspecialExpP2(p) => extraspecial_exp_p2(*p)?,
            Self::Wreath(p) => wreath(*p)?,
            Self::Product(fs) => {
                let prime = fs[0].prime();
                if fs.iter().any(|f| f.prime() != prime) {
                    return Err(bad(&self.to_string(), "factors have different primes"));
                }
                let mut acc = fs[0].build()?;
                for f in &fs[1..] {
                    acc = acc.direct_product(&f.build()?)?;
                }
                acc
            }
        };
        Ok(g.with_label(self.to_string()))
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    let p = smallest_prime_factor(n) as u32;
    if log_p(n, p).is_none() || !is_odd_prime(p as u64) {
        return Err(bad(&format!("cyclic:{n}"), "order must be a power of an odd prime"));
    }
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    Ok(FiniteGroup::from_table_unchecked(p, table, format!("cyclic:{n}")))
}

pub fn elementary_abelian(p: u32, rank: u32) -> Result<FiniteGroup> {
    let n = checked_pow(p, rank)?;
    let pu = p as usize;
    let add = |a: usize, b: usize| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..rank {
            out += ((a % pu + b % pu) % pu) * place;
            a /= pu;
            b /= pu;
            place *= pu;
        }
        out
    };
    let table = (0..n * n).map(|i| add(i / n, i % n) as u32).collect();
    Ok(FiniteGroup::from_table_unchecked(p, table, format!("elab:{p}:{rank}")))
}

/// Unitriangular 3×3 matrices over F_p; `(a, b, c)` has index `a + p b + p² c`
/// and product `(a+a', b+b', c+c'+ab')`.
pub fn extraspecial(p: u32) -> Result<FiniteGroup> {
    let pu = p as usize;
    let n = checked_pow(p, 3)?;
    let split = |x: usize| (x % pu, (x / pu) % pu, x / (pu * pu));
    let table = (0..n * n)
        .map(|i| {
            let ((a, b, c), (a2, b2, c2)) = (split(i / n), split(i % n));
            ((a + a2) % pu + pu * ((b + b2) % pu) + pu * pu * ((c + c2 + a * b2) % pu)) as u32
        })
        .collect();
    Ok(FiniteGroup::from_table_unchecked(p, table, format!("xsp:{p}")))
}

/// `C_{p²} ⋊ C_p` with the generator of `C_p` acting by `x ↦ x^{1+p}`.
pub fn extraspecial_exp_p2(p: u32) -> Result<FiniteGroup> {
    let pu = p as usize;
    let m = pu * pu;
    let n = checked_pow(p, 3)?;
    // (1+p)^b mod p²
    let twist: Vec<usize> = (0..pu)
        .scan(1usize, |acc, _| {
            let v = *acc;
            *acc = *acc * (1 + pu) % m;
            Some(v)
        })
        .collect();
    let table = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let (a, b) = (x % m, x / m);
            let (a2, b2) = (y % m, y / m);
            ((a + a2 * twist[b]) % m + m * ((b + b2) % pu)) as u32
        })
        .collect();
    Ok(FiniteGroup::from_table_unchecked(p, table, format!("xspm:{p}")))
}

/// `C_p ≀ C_p`: pairs `(v, s)` with `v ∈ F_p^p`, `s ∈ Z/p`, product
/// `(v, s)(w, t) = (v + shift_s(w), s + t)` where `shift_s(w)_i = w_{i-s}`.
pub fn wreath(p: u32) -> Result<FiniteGroup> {
    let pu = p as usize;
    let base = checked_pow(p, p)?;
    let n = checked_pow(p, p + 1)?;
    let digits = |v: usize| -> Vec<usize> {
        let mut v = v;
        (0..pu)
            .map(|_| {
                let d = v % pu;
                v /= pu;
                d
            })
            .collect()
    };
    let table = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let (v, s) = (digits(x % base), x / base);
            let (w, t) = (digits(y % base), y / base);
            let mut out = 0;
            let mut place = 1;
            for k in 0..pu {
                out += ((v[k] + w[(k + pu - s) % pu]) % pu) * place;
                place *= pu;
            }
            (out + base * ((s + t) % pu)) as u32
        })
        .collect();
    Ok(FiniteGroup::from_table_unchecked(p, table, format!("wreath:{p}")))
}

/// Parses the multiplication-table file format, validating all group axioms.
pub fn parse_table_file(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let mut header = |key: &str| -> Result<usize> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Table(format!("missing `{key}` line")))?;
        let mut parts = line.split_whitespace();
        if parts.next() != Some(key) {
            return Err(Error::Table(format!("expected `{key} <n>`, found `{line}`")));
        }
        let v = parts
            .next()
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Table(format!("bad `{key}` value in `{line}`")))?;
        if parts.next().is_some() {
            return Err(Error::Table(format!("trailing data in `{line}`")));
        }
        Ok(v)
    };
    let p = header("p")?;
    if p > u32::MAX as usize {
        return Err(Error::UnsupportedPrime(p as u64));
    }
    if !is_odd_prime(p as u64) {
        return Err(Error::UnsupportedPrime(p as u64));
    }
    let n = header("order")?;
    if n == 0 || n > MAX_TABLE_ORDER {
        return Err(Error::SizeBound {
            order: n,
            bound: MAX_TABLE_ORDER,
        });
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let line = lines.next().ok_or_else(|| Error::Table(format!("missing row {row}")))?;
        let before = table.len();
        for tok in line.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::Table(format!("bad entry `{tok}` in row {row}")))?;
            table.push(v);
        }
        if table.len() - before != n {
            return Err(Error::Table(format!(
                "row {row} has {} entries, expected {n}",
                table.len() - before
            )));
        }
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Table(format!("unexpected trailing line `{extra}`")));
    }
    FiniteGroup::from_table(p as u32, table, "table")
}

/// Serializes a group in the table-file format.
pub fn write_table_file(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("p {}\norder {}\n", g.prime(), n);
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Resolves a `--group` argument: a descriptor, or a path to a table file.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    match spec.parse::<GroupDescriptor>() {
        Ok(d) => d.build(),
        Err(desc_err) => {
            let path = std::path::Path::new(spec);
            if path.exists() {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: spec.to_string(),
                    message: e.to_string(),
                })?;
                Ok(parse_table_file(&text)?.with_label(spec.to_string()))
            } else {
                Err(desc_err)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> FiniteGroup {
        s.parse::<GroupDescriptor>().unwrap().build().unwrap()
    }

    fn assert_group(g: &FiniteGroup) {
        // Re-validate through the checked constructor.
        FiniteGroup::from_table(g.prime(), g.table().to_vec(), "check").unwrap();
    }

    #[test]
    fn cyclic_three_is_addition_mod_three() {
        let g = build("cyclic:3");
        assert_eq!(g.order(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mul(i, j), (i + j) % 3);
            }
        }
    }

    #[test]
    fn elementary_abelian_has_exponent_p() {
        let g = build("elab:3:2");
        assert_eq!(g.order(), 9);
        assert!((1..9).all(|a| g.element_order(a) == 3));
        assert_group(&g);
    }

    #[test]
    fn extraspecial_has_small_center_and_exponent_p() {
        for p in [3, 5] {
            let g = extraspecial(p).unwrap();
            assert_group(&g);
            assert_eq!(g.order(), (p * p * p) as usize);
            assert_eq!(g.exponent(), p as usize);
            assert_eq!(g.center().len(), p as usize);
            assert!(!g.is_abelian());
        }
    }

    #[test]
    fn other_constructors_are_groups() {
        for d in [
            "xspm:3",
            "wreath:3",
            "prod:cyclic:9,elab:3:2",
            "prod:xsp:3,cyclic:3",
            "cyclic:27",
        ] {
            let g = build(d);
            assert_group(&g);
        }
        let m = build("xspm:3");
        assert_eq!(m.exponent(), 9);
        assert_eq!(m.center().len(), 3);
        let w = build("wreath:3");
        assert_eq!(w.order(), 81);
        assert!(!w.is_abelian());
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(
            "cyclic:4".parse::<GroupDescriptor>(),
            Err(Error::UnsupportedPrime(2))
        ));
        assert!(matches!(
            "elab:2:3".parse::<GroupDescriptor>(),
            Err(Error::UnsupportedPrime(2))
        ));
        assert!("cyclic:15".parse::<GroupDescriptor>().is_err());
        assert!("foo:3".parse::<GroupDescriptor>().is_err());
        assert!("prod:cyclic:3".parse::<GroupDescriptor>().is_err());
        assert!("prod:cyclic:3,cyclic:5"
            .parse::<GroupDescriptor>()
            .unwrap()
            .build()
            .is_err());
        assert!("elab:3:9".parse::<GroupDescriptor>().unwrap().build().is_err());
        assert!("xsp".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn descriptor_display_round_trips() {
        for d in [
            "trivial:3",
            "cyclic:9",
            "elab:3:2",
            "xsp:5",
            "prod:cyclic:9,xsp:3,elab:3:1",
        ] {
            assert_eq!(d.parse::<GroupDescriptor>().unwrap().to_string(), d);
        }
    }

    #[test]
    fn table_file_round_trip() {
        let g = build("xsp:3");
        let text = write_table_file(&g);
        let h = parse_table_file(&text).unwrap();
        assert_eq!(h.table(), g.table());
        assert!(parse_table_file("p 3\norder 3\n0 1 2\n1 2 0\n").is_err());
        assert!(parse_table_file("p 2\norder 2\n0 1\n1 0\n").is_err());
        assert!(parse_table_file("p 3\norder 3\n0 1 2\n1 2 0\n2 0 1\n9\n").is_err());
        assert!(parse_table_file("# comment\np 3\n\norder 3\n0 1 2\n1 2 0 # row\n2 0 1\n").is_ok());
    }
}
