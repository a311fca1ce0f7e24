use thiserror::Error;

#[derive(Debug, Error)]
pub enum FloodError {
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("edge endpoint `{0}` is not a declared node")]
    DanglingEndpoint(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge #{0}")]
    UnknownEdge(usize),
    #[error("malformed weight `{0}`")]
    BadWeight(String),
    #[error("edge ({0}, {1}) must carry a finite weight")]
    NonFiniteEdgeWeight(String, String),
    #[error("graph has no ground levels (node weights)")]
    MissingGround,
    #[error("graph has no edge weights")]
    MissingEdgeWeights,
    #[error("expected a function on {expected} nodes, got {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("ceiling {ceiling} is below ground {ground} at node `{node}`")]
    CeilingBelowGround {
        node: String,
        ground: String,
        ceiling: String,
    },
    #[error("not a valid flooding: {0}")]
    InvalidFlooding(String),
    #[error("connectivity must be 4 or 8, got {0}")]
    Connectivity(u32),
    #[error("raster is empty")]
    EmptyRaster,
    #[error("node set is empty")]
    EmptySet,
    #[error("node set must be a proper subset of the graph")]
    FullSet,
    #[error("node set is not connected")]
    DisconnectedSet,
    #[error("source set is empty")]
    EmptySources,
    #[error("node `{0}` carries two markers")]
    DuplicateMarker(String),
    #[error("marker label {0} is used twice")]
    DuplicateLabel(u64),
    #[error("clusters #{0} and #{1} overlap without being nested")]
    NotNested(usize, usize),
    #[error("clusters #{0} and #{1} are identical")]
    DuplicateCluster(usize, usize),
    #[error("diameter does not increase from cluster #{child} to its father #{father}")]
    DiameterOrder { child: usize, father: usize },
    #[error("unknown cluster #{0}")]
    UnknownCluster(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("PGM: {0}")]
    Pgm(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = FloodError> = std::result::Result<T, E>;
