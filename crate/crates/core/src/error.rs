use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: String, right: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("image of {0:?} is not a signed monomial")]
    NonMonomialImage(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arc {arc} occurs {count} times (expected 2)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("inconsistent orientation at arc {0}")]
    Orientation(u32),
    #[error("cannot infer the sign of crossing {0}; give an explicit sign")]
    AmbiguousSign(usize),
    #[error("diagram is not planar: {faces} faces for {crossings} crossings")]
    NonPlanar { faces: usize, crossings: usize },
    #[error("sublink mask {mask:#x} out of range for {components} components")]
    MaskOutOfRange { mask: u64, components: usize },
    #[error("arc {0} does not exist")]
    NoSuchArc(u32),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("resource limit exceeded: {nodes} nodes (budget {budget})")]
    Budget { nodes: u64, budget: u64 },
    #[error("diagram has {crossings} crossings, limit {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("{components} components exceed the sublink bound {bound}")]
    TooManyComponents { components: usize, bound: usize },
    #[error("sublink assignment is missing mask {0:#x}")]
    IncompleteAssignment(u64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
