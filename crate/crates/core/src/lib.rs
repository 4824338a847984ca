//! Exact combinatorics of fat CW 3-spheres.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] evaluates the recursive function tower with a magnitude guard;
//! * [`patmat`] builds the forbidden-pattern matrices `M(s,t)` and checks containment;
//! * [`cw`] is the face-poset core shared by everything that follows;
//! * [`build`] assembles the balls `X(s,t)` and the spheres `S(s,t)`;
//! * [`shelling`] generates and verifies shelling and dual-shelling orders;
//! * [`metrics`] computes f-vectors, fatness and complexity;
//! * [`realize`] handles exact 4-dimensional hulls and poset isomorphism;
//! * [`cli`] wires the above into the `fatsph` binary.

pub mod arith;
pub mod build;
pub mod cli;
pub mod cw;
pub mod metrics;
pub mod patmat;
pub mod realize;
pub mod shelling;

pub(crate) mod serde_big {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
