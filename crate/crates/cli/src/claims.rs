//! The claim registry: every checked statement with its suite, the part of
//! the argument it comes from, and whether it must pass.

use serde::{Deserialize, Serialize};

use crate::config::Suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    /// Required claims decide the exit status; the others are recorded.
    pub required: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Recorded,
}

macro_rules! claims {
    ($($id:literal, $suite:ident, $anchor:literal, $req:literal;)*) => {
        pub const CLAIMS: &[ClaimSpec] = &[
            $(ClaimSpec { id: $id, suite: Suite::$suite, anchor: $anchor, required: $req },)*
        ];
    };
}

claims! {
    "transcription.checksum", Transcription, "appendix matrices", true;
    "transcription.omega-presentation", Transcription, "omega_t(u), omega_t(c) and the vol3 relators", true;
    "transcription.rho-presentation", Transcription, "rho_t(u), rho_t(c) and the vol3 relators", true;
    "transcription.unit-determinant", Transcription, "generators lie in SL", true;
    "transcription.m-preserved", Transcription, "M_t preserved by rho_t", true;
    "transcription.m1-signature", Transcription, "rho_1 in SO(3,1)", true;
    "forms.rho-invariant", Forms, "rho_t-invariant form is M_t", true;
    "forms.omega-free-variables", Forms, "four free variables for J_t", true;
    "forms.det-square", Forms, "det J_t is a square in Q(t)", true;
    "forms.det-ratio", Forms, "det J_t against 16(3-4t^2)^4/(1-4t^2)^2", false;
    "conjugacy.double-rho", Conjugacy, "omega_t conjugate to rho_t + rho_t", true;
    "left-regular.spanning-words", LeftRegular, "16 words spanning M_4", true;
    "left-regular.homomorphism", LeftRegular, "eta_t is a representation", true;
    "left-regular.integrality", LeftRegular, "eta_t entries in Z[t, s]", false;
    "pell.identity", Pell, "t_n^2 - d y_n^2 = 1", true;
    "pell.table", Pell, "worked examples", true;
    "primes.lucas-pair", Primes, "(u, 1/u) is a Lucas pair", true;
    "primes.table-membership", Primes, "worked-example primes are primitive", true;
    "primes.sequence", Primes, "odd primitive primes p_n | t_n, increasing", true;
    "image.vol3-order", Image, "|omega_0(vol3)| = 320", true;
    "image.orbifold-order", Image, "order of omega_0 on u, c", false;
    "image.schreier", Image, "Schreier generators of Pi are omega_0-trivial", true;
    "su.membership", Su, "omega_{t_n}(vol3) < SU(J_{t_n}; O_d, tau)", true;
    "su.det-class", Su, "det J_{t_n} is a rational square", true;
    "su.isotropic-witness", Su, "non-uniformity witness", true;
    "kernel.diagram", Kernel, "the reduction diagram commutes when p | t", true;
    "kernel.schreier-membership", Kernel, "omega_{t_n}(Pi) < principal congruence subgroup", true;
    "systole.bounds", Systole, "congruence systole lower bounds increase with p_n", true;
}

pub fn spec(id: &str) -> Option<&'static ClaimSpec> {
    CLAIMS.iter().find(|c| c.id == id)
}
