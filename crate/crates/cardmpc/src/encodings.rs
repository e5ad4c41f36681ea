//! Commitment schemes for integers in Z/nZ.
//!
//! Three schemes encode a value as one or more one-club card rows:
//!
//! * `direct` — a single row of `n` cards with the club at position `a`.
//! * `binary` — one 2-card row per binary digit of `a`, most significant
//!   digit first, `ceil(lg n)` digits in total.
//! * `crt` — `n` must factor into at least two coprime prime powers; one
//!   row per factor holds the residue of `a` modulo that factor. The
//!   residue vector determines `a` uniquely, which is what makes five
//!   cards enough for Z/6Z (2 + 3).
//!
//! Everything here is a pure function; no shuffling or card accounting.

use serde::Serialize;
use thiserror::Error;

use crate::deck::{DeckError, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("value {value} is out of range for modulus {modulus}")]
    ValueOutOfRange { value: u64, modulus: u64 },
    #[error("the crt scheme needs at least two coprime prime-power factors, and {0} has one")]
    CrtInapplicable(u64),
    #[error("commitment has {got} parts, scheme expects {expected}")]
    WrongPartCount { expected: usize, got: usize },
    #[error("part {index} has {got} cards, scheme expects {expected}")]
    WrongPartLength { index: usize, expected: usize, got: usize },
    #[error("decoded value {value} is out of range for modulus {modulus}")]
    DecodedValueOutOfRange { value: u64, modulus: u64 },
    #[error("{got} residues supplied for {expected} factors")]
    ResidueCountMismatch { expected: usize, got: usize },
    #[error("residue {residue} is out of range for factor modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error(transparent)]
    Deck(#[from] DeckError),
}

/// Number of binary digits used for values below `n`: the bit length of
/// `n - 1`. This is the `ceil(lg n)` that all binary-scheme card counts
/// are stated in.
pub fn ceil_lg(n: u64) -> u32 {
    debug_assert!(n >= 2);
    u64::BITS - (n - 1).leading_zeros()
}

/// One coprime factor `prime^exponent` of a decomposed modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    pub modulus: u64,
}

/// The prime-power factorization of `n`, sorted by ascending modulus.
///
/// Only applicable when there are at least two distinct primes: with a
/// single factor there is nothing for the residue trick to split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrtDecomposition {
    n: u64,
    factors: Vec<PrimePower>,
}

impl CrtDecomposition {
    /// Factor `n` by trial division. Errors when `n < 2` or when `n` is a
    /// prime power (a single factor).
    pub fn decompose(n: u64) -> Result<Self, EncodingError> {
        if n < 2 {
            return Err(EncodingError::ModulusTooSmall(n));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                let mut exponent = 0;
                let mut modulus = 1;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    exponent += 1;
                    modulus *= p;
                }
                factors.push(PrimePower { prime: p, exponent, modulus });
            }
            p += 1;
        }
        if rest > 1 {
            factors.push(PrimePower { prime: rest, exponent: 1, modulus: rest });
        }
        if factors.len() < 2 {
            return Err(EncodingError::CrtInapplicable(n));
        }
        factors.sort_by_key(|f| f.modulus);
        Ok(CrtDecomposition { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn moduli(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.modulus)
    }

    /// The largest factor modulus, written `m` in every count formula.
    pub fn largest_modulus(&self) -> u64 {
        self.factors.last().expect("at least two factors").modulus
    }

    /// Sum of the factor moduli: the cards in one commitment.
    pub fn modulus_sum(&self) -> u64 {
        self.moduli().sum()
    }
}

/// Recombine residues into the unique value below `n` that reduces to
/// each residue modulo its factor. Standard incremental construction with
/// a modular inverse per factor; the factor moduli are coprime by how the
/// decomposition is built, so the inverses always exist.
pub fn crt_reconstruct(residues: &[u64], decomposition: &CrtDecomposition) -> Result<u64, EncodingError> {
    let factors = decomposition.factors();
    if residues.len() != factors.len() {
        return Err(EncodingError::ResidueCountMismatch {
            expected: factors.len(),
            got: residues.len(),
        });
    }
    for (&residue, factor) in residues.iter().zip(factors) {
        if residue >= factor.modulus {
            return Err(EncodingError::ResidueOutOfRange { residue, modulus: factor.modulus });
        }
    }
    let mut value = residues[0];
    let mut partial_modulus = factors[0].modulus;
    for (&residue, factor) in residues.iter().zip(factors).skip(1) {
        let q = factor.modulus;
        let inv = mod_inverse(partial_modulus % q, q);
        let diff = (residue + q - value % q) % q;
        value += partial_modulus * ((diff * inv) % q);
        partial_modulus *= q;
    }
    Ok(value)
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
/// Panics when `gcd(a, m) != 1`; callers only pass coprime pairs.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    assert!(r == 1, "{a} is not invertible mod {m}");
    if t < 0 {
        t += m as i128;
    }
    t as u64
}

/// One of the three commitment schemes, with its modulus baked in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "scheme")]
pub enum Scheme {
    Direct { modulus: u64 },
    Binary { modulus: u64 },
    Crt(CrtDecomposition),
}

impl Scheme {
    pub fn direct(n: u64) -> Result<Self, EncodingError> {
        if n < 2 {
            return Err(EncodingError::ModulusTooSmall(n));
        }
        Ok(Scheme::Direct { modulus: n })
    }

    pub fn binary(n: u64) -> Result<Self, EncodingError> {
        if n < 2 {
            return Err(EncodingError::ModulusTooSmall(n));
        }
        Ok(Scheme::Binary { modulus: n })
    }

    pub fn crt(n: u64) -> Result<Self, EncodingError> {
        Ok(Scheme::Crt(CrtDecomposition::decompose(n)?))
    }

    /// Parse the scheme selector used on the command line.
    pub fn from_name(name: &str, n: u64) -> Result<Option<Self>, EncodingError> {
        match name {
            "direct" => Self::direct(n).map(Some),
            "binary" => Self::binary(n).map(Some),
            "crt" => Self::crt(n).map(Some),
            _ => Ok(None),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Direct { .. } => "direct",
            Scheme::Binary { .. } => "binary",
            Scheme::Crt(_) => "crt",
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            Scheme::Direct { modulus } | Scheme::Binary { modulus } => *modulus,
            Scheme::Crt(d) => d.n(),
        }
    }

    /// Lengths of the card rows making up one commitment.
    pub fn part_lengths(&self) -> Vec<usize> {
        match self {
            Scheme::Direct { modulus } => vec![*modulus as usize],
            Scheme::Binary { modulus } => vec![2; ceil_lg(*modulus) as usize],
            Scheme::Crt(d) => d.moduli().map(|m| m as usize).collect(),
        }
    }

    /// Cards per commitment: `n` for direct, `2*ceil(lg n)` for binary,
    /// and the factor-modulus sum for crt.
    pub fn commitment_width(&self) -> u64 {
        self.part_lengths().iter().map(|&l| l as u64).sum()
    }

    /// Encode a value as face-down card rows under this scheme.
    pub fn encode(&self, value: u64) -> Result<Commitment, EncodingError> {
        let n = self.modulus();
        if value >= n {
            return Err(EncodingError::ValueOutOfRange { value, modulus: n });
        }
        let parts = match self {
            Scheme::Direct { modulus } => {
                vec![Sequence::encode_value(*modulus as usize, value as usize)?]
            }
            Scheme::Binary { modulus } => {
                let digits = ceil_lg(*modulus);
                (0..digits)
                    .rev()
                    .map(|k| Sequence::encode_value(2, ((value >> k) & 1) as usize))
                    .collect::<Result<_, _>>()?
            }
            Scheme::Crt(d) => d
                .moduli()
                .map(|q| Sequence::encode_value(q as usize, (value % q) as usize))
                .collect::<Result<_, _>>()?,
        };
        Ok(Commitment { scheme: self.clone(), parts })
    }
}

/// An encoded value: one card row per scheme part, all face-down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitment {
    scheme: Scheme,
    parts: Vec<Sequence>,
}

impl Commitment {
    /// Reassemble a commitment from rows produced by a protocol. Checks
    /// the part count and lengths against the scheme.
    pub fn from_parts(scheme: Scheme, parts: Vec<Sequence>) -> Result<Self, EncodingError> {
        let expected = scheme.part_lengths();
        if parts.len() != expected.len() {
            return Err(EncodingError::WrongPartCount {
                expected: expected.len(),
                got: parts.len(),
            });
        }
        for (index, (part, &len)) in parts.iter().zip(&expected).enumerate() {
            if part.len() != len {
                return Err(EncodingError::WrongPartLength { index, expected: len, got: part.len() });
            }
        }
        Ok(Commitment { scheme, parts })
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn parts(&self) -> &[Sequence] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Sequence> {
        self.parts
    }

    /// Total (clubs, hearts) across all parts.
    pub fn card_content(&self) -> (usize, usize) {
        self.parts.iter().fold((0, 0), |(c, h), part| {
            let (pc, ph) = part.card_content();
            (c + pc, h + ph)
        })
    }

    /// Invert the encoding. For crt commitments this reconstructs the
    /// value from the per-factor residues; for binary ones it refolds the
    /// digits and rejects values at or above the modulus, which cannot
    /// come out of a well-formed protocol.
    pub fn decode(&self) -> Result<u64, EncodingError> {
        let part_values: Vec<u64> = self
            .parts
            .iter()
            .map(|p| p.decode_value().map(|v| v as u64))
            .collect::<Result<_, _>>()?;
        match &self.scheme {
            Scheme::Direct { .. } => Ok(part_values[0]),
            Scheme::Binary { modulus } => {
                let value = part_values.iter().fold(0, |acc, &d| (acc << 1) | d);
                if value >= *modulus {
                    return Err(EncodingError::DecodedValueOutOfRange {
                        value,
                        modulus: *modulus,
                    });
                }
                Ok(value)
            }
            Scheme::Crt(d) => crt_reconstruct(&part_values, d),
        }
    }

    /// Face-up inspection string with parts separated by `|`, e.g.
    /// `"CH|HHC"`. Harness-only: printing it reveals the value.
    pub fn symbol_string(&self) -> String {
        self.parts
            .iter()
            .map(Sequence::symbol_string)
            .collect::<Vec<_>>()
            .join("|")
    }
}
