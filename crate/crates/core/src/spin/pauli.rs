//! Pauli-term Hamiltonians: terms as sparse Pauli strings, a strict text
//! format, and the bitmask machinery behind the matrix-free kernels.

use std::fmt::{self, Write as _};
use std::io::{BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::amplitude::Amplitude;

/// A single-site Pauli operator (identity factors are implicit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliOp {
    X,
    Y,
    Z,
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliOp::X => "X",
            PauliOp::Y => "Y",
            PauliOp::Z => "Z",
        })
    }
}

impl FromStr for PauliOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "X" => Ok(PauliOp::X),
            "Y" => Ok(PauliOp::Y),
            "Z" => Ok(PauliOp::Z),
            other => Err(format!("unknown Pauli operator '{other}'")),
        }
    }
}

/// One Hamiltonian term: a real coefficient times a product of Pauli
/// operators on distinct sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term<F> {
    /// Real coefficient.
    pub coeff: F,
    /// Operators as `(site, op)`, sorted by site, each site at most once,
    /// never empty.
    ops: Vec<(u32, PauliOp)>,
}

impl<F: Scalar> Term<F> {
    /// Build a term, sorting the operators by site.
    ///
    /// Errors on an empty operator list, a repeated site, or a non-finite
    /// coefficient.
    pub fn new(coeff: F, ops: impl IntoIterator<Item = (u32, PauliOp)>) -> Result<Self> {
        let mut ops: Vec<(u32, PauliOp)> = ops.into_iter().collect();
        if ops.is_empty() {
            return Err(Error::InvalidParameter(
                "a term needs at least one Pauli operator".into(),
            ));
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "term coefficient must be finite, got {coeff}"
            )));
        }
        ops.sort_unstable_by_key(|&(s, _)| s);
        if ops.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter(
                "a term may touch each site at most once".into(),
            ));
        }
        Ok(Self { coeff, ops })
    }

    /// The operators, sorted by site.
    pub fn ops(&self) -> &[(u32, PauliOp)] {
        &self.ops
    }

    /// Sites this term acts on, ascending.
    pub fn sites(&self) -> impl Iterator<Item = u32> + '_ {
        self.ops.iter().map(|&(s, _)| s)
    }

    /// Number of `Y` factors; even means the term's matrix is real.
    pub fn y_count(&self) -> u32 {
        self.ops
            .iter()
            .filter(|&&(_, op)| op == PauliOp::Y)
            .count() as u32
    }
}

/// A Hamiltonian: `n` spin-1/2 sites and a sum of Pauli terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian<F> {
    n: u32,
    terms: Vec<Term<F>>,
}

impl<F: Scalar> Hamiltonian<F> {
    /// Build a Hamiltonian, validating every term site against `n`.
    pub fn new(n: u32, terms: Vec<Term<F>>) -> Result<Self> {
        for t in &terms {
            for s in t.sites() {
                if s >= n {
                    return Err(Error::VertexOutOfRange { v: s, n: n as usize });
                }
            }
        }
        Ok(Self { n, terms })
    }

    /// Number of sites.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The terms.
    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    /// Sum of absolute coefficients — an upper bound on the operator norm.
    pub fn norm1(&self) -> F {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// Largest absolute coefficient (zero for an empty term list).
    pub fn max_abs_coeff(&self) -> F {
        self.terms
            .iter()
            .map(|t| t.coeff.abs())
            .fold(F::zero(), F::max)
    }

    /// Whether every term has an even number of `Y` factors, i.e. the
    /// matrix is real symmetric.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.y_count() % 2 == 0)
    }

    /// Render as text: a `n t` header, then one `coeff site:op [site:op ...]`
    /// line per term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.terms.len());
        for t in &self.terms {
            let _ = write!(out, "{}", t.coeff);
            for &(s, op) in t.ops() {
                let _ = write!(out, " {s}:{op}");
            }
            out.push('\n');
        }
        out
    }

    /// Write the text form to `w`.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    /// Parse the text form produced by [`to_text`](Self::to_text).
    ///
    /// Strict: the header must announce the exact term count, every site
    /// must be in range, and coefficients are parsed as decimal floats.
    /// Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input, expected 'n t' header".into(),
        })?;
        let mut it = header.split_whitespace();
        let (n, t_count) = match (it.next(), it.next(), it.next()) {
            (Some(n), Some(t), None) => {
                let n: u32 = n.parse().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("invalid site count '{n}'"),
                })?;
                let t: usize = t.parse().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("invalid term count '{t}'"),
                })?;
                (n, t)
            }
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "header must be 'n t'".into(),
                });
            }
        };
        let mut terms = Vec::with_capacity(t_count);
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "blank line in term list".into(),
                });
            }
            let mut fields = raw.split_whitespace();
            let coeff_s = fields.next().unwrap();
            let coeff_f64: f64 = coeff_s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid coefficient '{coeff_s}'"),
            })?;
            let coeff = F::from_f64(coeff_f64).ok_or_else(|| Error::Parse {
                line,
                msg: format!("coefficient '{coeff_s}' not representable"),
            })?;
            let mut ops = Vec::new();
            for field in fields {
                let (site_s, op_s) = field.split_once(':').ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected 'site:op', got '{field}'"),
                })?;
                let site: u32 = site_s.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid site '{site_s}'"),
                })?;
                let op: PauliOp = op_s.parse().map_err(|msg: String| Error::Parse { line, msg })?;
                ops.push((site, op));
            }
            let term = Term::new(coeff, ops).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            terms.push(term);
        }
        if terms.len() != t_count {
            return Err(Error::Parse {
                line: terms.len() + 2,
                msg: format!("header announced {t_count} terms, found {}", terms.len()),
            });
        }
        Hamiltonian::new(n, terms).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })
    }

    /// Read the text form from `r`.
    pub fn read_from(r: impl Read) -> Result<Self> {
        let mut text = String::new();
        BufReader::new(r).read_to_string(&mut text)?;
        Self::parse(&text)
    }

    /// Read the text form from a file.
    pub fn read_from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(std::fs::File::open(path)?)
    }

    /// Copy with coefficients converted to `f64`, the dense kernel's
    /// working precision.
    pub(crate) fn to_f64(&self) -> Hamiltonian<f64> {
        Hamiltonian {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.to_f64().expect("term coefficients are finite"),
                    ops: t.ops.clone(),
                })
                .collect(),
        }
    }
}

/// A term compiled to bitmasks for the matrix-free kernel.
///
/// `P|b> = i^y * (-1)^popcount(b & z_mask) * |b XOR x_mask>` where
/// `x_mask` marks `X`/`Y` sites, `z_mask` marks `Z`/`Y` sites, and `y` is
/// the `Y` count; `phase` carries `coeff * i^y`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MaskTerm<A> {
    pub(crate) x_mask: usize,
    pub(crate) z_mask: usize,
    pub(crate) phase: A,
}

/// Compile every term of `h` to masks (requires `h.n() <= 26`, which the
/// solver caps guarantee; on the real amplitude path the caller must have
/// checked [`Hamiltonian::is_real`]).
pub(crate) fn mask_terms<F: Scalar, A: Amplitude<F>>(h: &Hamiltonian<F>) -> Vec<MaskTerm<A>> {
    debug_assert!(h.n() < usize::BITS);
    h.terms()
        .iter()
        .map(|t| {
            let mut x_mask = 0usize;
            let mut z_mask = 0usize;
            for &(s, op) in t.ops() {
                let bit = 1usize << s;
                match op {
                    PauliOp::X => x_mask |= bit,
                    PauliOp::Y => {
                        x_mask |= bit;
                        z_mask |= bit;
                    }
                    PauliOp::Z => z_mask |= bit,
                }
            }
            MaskTerm {
                x_mask,
                z_mask,
                phase: A::from_real(t.coeff).mul_i_pow(t.y_count()),
            }
        })
        .collect()
}

/// Dense matrix-free application `out = H * input` over the full
/// `2^n`-dimensional state space.
///
/// Each output amplitude is assembled independently:
/// `out[b] = sum_t phase_t * (-1)^popcount((b^x_t) & z_t) * input[b^x_t]`,
/// which is the row form of the per-term rule above.
pub(crate) fn apply_mask_terms<F: Scalar, A: Amplitude<F>>(
    terms: &[MaskTerm<A>],
    input: &[A],
    out: &mut [A],
) {
    debug_assert_eq!(input.len(), out.len());
    for (b, o) in out.iter_mut().enumerate() {
        let mut acc = A::zero();
        for t in terms {
            let src = b ^ t.x_mask;
            let contrib = input[src] * t.phase;
            if (src & t.z_mask).count_ones() % 2 == 1 {
                acc -= contrib;
            } else {
                acc += contrib;
            }
        }
        *o = acc;
    }
}

/// The explicit matrix entry `<row|term|col>` contribution — the slow
/// reference the kernels are tested against.
#[cfg(test)]
pub(crate) fn mask_term_entry<F: Scalar, A: Amplitude<F>>(
    t: &MaskTerm<A>,
    row: usize,
    col: usize,
) -> Option<A> {
    if row != col ^ t.x_mask {
        return None;
    }
    let contrib = t.phase;
    Some(if (col & t.z_mask).count_ones() % 2 == 1 {
        -contrib
    } else {
        contrib
    })
}
