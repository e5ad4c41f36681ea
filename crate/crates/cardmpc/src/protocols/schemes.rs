//! Commitment-level protocols: run the sequence-level machinery once per
//! part, in the part order the scheme fixes (ascending modulus for crt,
//! most significant digit first for binary).
//!
//! Reuse across parts is what the supply gives for free: extras drawn for
//! an early part return to the supply when that part finishes and get
//! drawn again by the next one, so one shared extra set serves the whole
//! commitment.

use crate::encodings::{Commitment, Scheme};

use super::{Protocol, ProtocolError, Session};

impl Session {
    /// Copy a commitment part by part. Works for every scheme.
    pub fn copy_commitment(
        &mut self,
        commitment: Commitment,
    ) -> Result<(Commitment, Commitment), ProtocolError> {
        let scheme = commitment.scheme().clone();
        let mut firsts = Vec::new();
        let mut seconds = Vec::new();
        for part in commitment.into_parts() {
            let (first, second) = self.copy_sequence(part)?;
            firsts.push(first);
            seconds.push(second);
        }
        Ok((
            Commitment::from_parts(scheme.clone(), firsts)?,
            Commitment::from_parts(scheme, seconds)?,
        ))
    }

    /// Add two commitments part by part. Count-only for the binary
    /// scheme, whose addition runs through a boolean-function protocol
    /// this simulator does not model.
    pub fn add_commitments(
        &mut self,
        a: Commitment,
        b: Commitment,
    ) -> Result<Commitment, ProtocolError> {
        let scheme = Self::check_operands(Protocol::Add, &a, &b)?;
        let parts = a
            .into_parts()
            .into_iter()
            .zip(b.into_parts())
            .map(|(x, y)| self.add_sequences(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Commitment::from_parts(scheme, parts)?)
    }

    /// Multiply two commitments part by part, smallest part first.
    /// Count-only for the binary scheme, like addition.
    ///
    /// For crt commitments the `optimized` flag decides what happens to
    /// the remains of each part's consumed inputs. Optimized, they
    /// re-enter the supply as free cards for the larger parts that follow;
    /// unoptimized, they sit dead on the table until the protocol ends,
    /// and only the extras the part actually drew go back.
    pub fn mult_commitments(
        &mut self,
        a: Commitment,
        b: Commitment,
        optimized: bool,
    ) -> Result<Commitment, ProtocolError> {
        let scheme = Self::check_operands(Protocol::Mult, &a, &b)?;
        let hold_remains = !optimized && matches!(scheme, Scheme::Crt(_));
        let mut dead = (0usize, 0usize);
        let mut parts = Vec::new();
        for (x, y) in a.into_parts().into_iter().zip(b.into_parts()) {
            let q = x.len();
            parts.push(self.mult_sequences(x, y)?);
            if hold_remains {
                // One part consumed 2q input cards and left a q-card
                // output, so one club and q-1 hearts of remains stay out
                // of circulation.
                self.draw(1, q - 1)?;
                dead.0 += 1;
                dead.1 += q - 1;
            }
        }
        self.release(dead.0, dead.1);
        Ok(Commitment::from_parts(scheme, parts)?)
    }

    fn check_operands(
        protocol: Protocol,
        a: &Commitment,
        b: &Commitment,
    ) -> Result<Scheme, ProtocolError> {
        if a.scheme() != b.scheme() {
            return Err(ProtocolError::SchemeMismatch);
        }
        let scheme = a.scheme().clone();
        if matches!(scheme, Scheme::Binary { .. }) {
            return Err(ProtocolError::UnsupportedExecution { protocol, scheme: "binary" });
        }
        Ok(scheme)
    }
}
