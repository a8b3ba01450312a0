use thiserror::Error;

/// Errors raised by the group, graph and construction routines.
///
/// Each variant has a stable code (see [`Error::code`]) which the command
/// line frontend reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // permutations and groups
    #[error("point {0} occurs more than once")]
    RepeatedPoint(usize),
    #[error("point {point} is outside the domain of degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("image sequence is not a bijection")]
    NotABijection,
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure grew past the cap of {0} elements")]
    CapExceeded(usize),
    #[error("the action is not transitive")]
    NotTransitive,

    // subgroups
    #[error("the given elements do not form a subgroup of the parent group")]
    NotASubgroup,
    #[error("domain of size {size} exceeds the limit {limit}")]
    DomainTooLarge { size: usize, limit: usize },
    #[error("subgroup enumeration stopped after {closures} closures ({found} subgroups found so far)")]
    SubgroupEnumerationCapExceeded { closures: usize, found: usize },
    #[error("seed points must be distinct")]
    DegenerateSeed,

    // coset graphs
    #[error("connector set contains the identity")]
    LoopConnector,
    #[error("connector set is not closed under inverses")]
    NotInverseClosed,
    #[error("coset graph spec violated: {0}")]
    SpecInvariantViolated(String),
    #[error("element {0} is not an involution")]
    NotInvolution(String),
    #[error("element {0} lies inside the subgroup")]
    InsideSubgroup(String),
    #[error("orbital is not self-paired")]
    NotSelfPaired,
    #[error("orbital is the diagonal")]
    DiagonalOrbital,
    #[error("the action is not symmetric on the graph")]
    NotSymmetric,
    #[error("no involution flips an arc at the base vertex")]
    NoFlippingInvolution,

    // quotients
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("blocks {0} and {1} are not adjacent in the quotient")]
    NotQuotientArc(usize, usize),
    #[error("the quotient is trivial (no arcs between blocks)")]
    TrivialQuotient,
    #[error("subgroups are not strictly nested")]
    NotNested,
    #[error("the involution lies in the larger subgroup, so the quotient has valency one")]
    DegenerateQuotient,

    // designs
    #[error("blocks do not all have the same size")]
    NotUniformBlocks,
    #[error("points do not all lie on the same number of blocks")]
    NotUniformPoints,
    #[error("point {0} is incident with its polar block")]
    DegenerateDesign(usize),
    #[error("maps do not form a polarity: {0}")]
    NotPolarity(String),
    #[error("the group is not flag-transitive on the design")]
    NotFlagTransitive,

    // constructions
    #[error("twist does not extend to a homomorphism into Aut(N): {0}")]
    TwistNotHomomorphism(String),
    #[error("chain violates inverse symmetry on arc ({0}, {1})")]
    InverseSymmetryViolated(usize, usize),
    #[error("chain is not compatible with the twist on arc ({arc0}, {arc1}) under generator {generator}")]
    NotCompatible { arc0: usize, arc1: usize, generator: usize },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("the arc given is not an arc of the host graph: ({0}, {1})")]
    NotSubgraph(usize, usize),
    #[error("the involution fixes the subgraph, giving a loop")]
    SubgraphFixedByInvolution,
    #[error("quotient valency {0} is below 2")]
    ValencyTooSmall(usize),
    #[error(
        "no strict chain: the middle subgroup is not strictly between the arc stabilizer and the vertex stabilizer"
    )]
    NoStrictChain,
    #[error("the involution lies in the middle subgroup")]
    DegenerateInvolution,
    #[error("the group is not a semidirect product of a regular normal subgroup by the block stabilizer")]
    NotSemidirect,
    #[error("the flag pairs are not a self-paired orbital")]
    NotSelfPairedOrbital,
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in certificates and CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RepeatedPoint(_) => "RepeatedPoint",
            Error::PointOutOfRange { .. } => "PointOutOfRange",
            Error::SyntaxError(_) => "SyntaxError",
            Error::NotABijection => "NotABijection",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NotTransitive => "NotTransitive",
            Error::NotASubgroup => "NotASubgroup",
            Error::DomainTooLarge { .. } => "DomainTooLarge",
            Error::SubgroupEnumerationCapExceeded { .. } => "SubgroupEnumerationCapExceeded",
            Error::DegenerateSeed => "DegenerateSeed",
            Error::LoopConnector => "LoopConnector",
            Error::NotInverseClosed => "NotInverseClosed",
            Error::SpecInvariantViolated(_) => "SpecInvariantViolated",
            Error::NotInvolution(_) => "NotInvolution",
            Error::InsideSubgroup(_) => "InsideSubgroup",
            Error::NotSelfPaired => "NotSelfPaired",
            Error::DiagonalOrbital => "DiagonalOrbital",
            Error::NotSymmetric => "NotSymmetric",
            Error::NoFlippingInvolution => "NoFlippingInvolution",
            Error::NotInvariant => "NotInvariant",
            Error::NotQuotientArc(..) => "NotQuotientArc",
            Error::TrivialQuotient => "TrivialQuotient",
            Error::NotNested => "NotNested",
            Error::DegenerateQuotient => "DegenerateQuotient",
            Error::NotUniformBlocks => "NotUniformBlocks",
            Error::NotUniformPoints => "NotUniformPoints",
            Error::DegenerateDesign(_) => "DegenerateDesign",
            Error::NotPolarity(_) => "NotPolarity",
            Error::NotFlagTransitive => "NotFlagTransitive",
            Error::TwistNotHomomorphism(_) => "TwistNotHomomorphism",
            Error::InverseSymmetryViolated(..) => "InverseSymmetryViolated",
            Error::NotCompatible { .. } => "NotCompatible",
            Error::InvalidChain(_) => "InvalidChain",
            Error::NotSubgraph(..) => "NotSubgraph",
            Error::SubgraphFixedByInvolution => "SubgraphFixedByInvolution",
            Error::ValencyTooSmall(_) => "ValencyTooSmall",
            Error::NoStrictChain => "NoStrictChain",
            Error::DegenerateInvolution => "DegenerateInvolution",
            Error::NotSemidirect => "NotSemidirect",
            Error::NotSelfPairedOrbital => "NotSelfPairedOrbital",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
