//! Constraints that a Galois group places on relative p-class groups,
//! computed through modular character theory.
//!
//! The library builds finite groups as validated Cayley tables, constructs
//! the splitting field `E = F_p(zeta_n)`, computes character tables over `E`
//! together with their Frobenius (Galois) orbits, and turns the faithful
//! irreducible constituents into a rank-divisibility modulus for the p-part
//! of a relative class group. A module laboratory provides finite abelian
//! p-groups with an explicit group action so the decomposition and
//! annihilation arguments behind those constraints can be machine-checked,
//! and a verifier replays the predictions against published class-group
//! tables shipped as CSV fixtures.
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release -p galclass --example build_groups
//! cargo run --release -p galclass --example splitting_fields
//! cargo run --release -p galclass --example character_tables
//! cargo run --release -p galclass --example galois_orbits
//! cargo run --release -p galclass --example rank_constraints
//! cargo run --release -p galclass --example module_decompositions
//! cargo run --release -p galclass --example exhaustive_scans
//! cargo run --release -p galclass --example verify_published_data
//! ```
//!
//! The same functionality is reachable in batch form through the `galclass`
//! binary (`group`, `chartable`, `rank`, `table14`, `scan`, `verify`,
//! `kondo` subcommands).

pub mod character;
pub mod cli;
pub mod field;
pub mod gmodule;
pub mod group;
pub mod rank;
pub mod verify;

use std::fmt;

/// Crate-wide error type. Validation failures carry enough context to tell
/// the distinct failure modes apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Cayley table row or column is not a permutation of `0..order`.
    NotLatinSquare(String),
    /// No two-sided identity element exists.
    NoIdentity,
    /// Some element has no two-sided inverse.
    NoInverse(usize),
    /// Associativity fails on the reported triple.
    NonAssociative(usize, usize, usize),
    /// A family parameter is outside its documented range.
    ParamOutOfRange(String),
    /// The requested subgroup is not normal in its parent.
    NotNormal,
    /// An enumeration bound (group order, search space, scan size) was hit.
    BoundExceeded(String),
    /// `p` is not prime.
    NotPrime(u64),
    /// `gcd(p, n) != 1` where coprimality is required.
    NotCoprime(u64, u64),
    /// p divides the group order where `p ∤ #G` is required.
    PrimeDividesOrder(u64, usize),
    /// The requested family has no entry in the closed-form table.
    UnsupportedFamily(String),
    /// The splitting-field eigenbasis did not fully separate (table method).
    DegenerateEigenbasis(String),
    /// Applying Frobenius to a table row did not yield another row.
    OrbitClosure(usize),
    /// A Galois orbit sum has a value outside the prime field.
    OrbitSumNotPrimeField(usize),
    /// An action matrix is not a well-defined endomorphism.
    NotEndomorphism(String),
    /// An action matrix is not invertible on the module.
    NotAutomorphism(String),
    /// The extended action violates the group relations.
    ActionRelationViolation(usize, usize),
    /// The module is required to be cyclic and is not.
    NotCyclic,
    /// A stated norm/degree hypothesis does not hold on the given module.
    HypothesisViolated(String),
    /// A submodule is not stable under the group action.
    NotStable,
    /// Text input could not be parsed; carries line number and message.
    Parse(usize, String),
    /// Unknown record context tag.
    UnknownContext(String),
    /// Degenerate polynomial input (zero leading coefficient, degree < 2).
    DegeneratePolynomial(String),
    /// I/O failure, flattened to a message.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotLatinSquare(d) => write!(f, "not a Latin square: {d}"),
            Error::NoIdentity => write!(f, "no two-sided identity element"),
            Error::NoInverse(i) => write!(f, "element {i} has no two-sided inverse"),
            Error::NonAssociative(a, b, c) => {
                write!(f, "associativity fails on triple ({a}, {b}, {c})")
            }
            Error::ParamOutOfRange(d) => write!(f, "family parameter out of range: {d}"),
            Error::NotNormal => write!(f, "subgroup is not normal"),
            Error::BoundExceeded(d) => write!(f, "bound exceeded: {d}"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotCoprime(p, n) => write!(f, "gcd({p}, {n}) != 1"),
            Error::PrimeDividesOrder(p, n) => write!(f, "prime {p} divides group order {n}"),
            Error::UnsupportedFamily(s) => write!(f, "family not in closed-form table: {s}"),
            Error::DegenerateEigenbasis(d) => write!(f, "eigenbasis degeneracy: {d}"),
            Error::OrbitClosure(i) => {
                write!(f, "Frobenius image of row {i} is not a table row")
            }
            Error::OrbitSumNotPrimeField(i) => {
                write!(f, "orbit sum of orbit {i} leaves the prime field")
            }
            Error::NotEndomorphism(d) => write!(f, "not an endomorphism: {d}"),
            Error::NotAutomorphism(d) => write!(f, "not an automorphism: {d}"),
            Error::ActionRelationViolation(g, h) => {
                write!(f, "action violates the relation at pair ({g}, {h})")
            }
            Error::NotCyclic => write!(f, "module is not cyclic"),
            Error::HypothesisViolated(d) => write!(f, "hypothesis violated: {d}"),
            Error::NotStable => write!(f, "submodule is not stable under the action"),
            Error::Parse(line, m) => write!(f, "parse error at line {line}: {m}"),
            Error::UnknownContext(s) => write!(f, "unknown record context: {s}"),
            Error::DegeneratePolynomial(d) => write!(f, "degenerate polynomial: {d}"),
            Error::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
