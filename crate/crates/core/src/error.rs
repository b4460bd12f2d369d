use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no nodes")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("node {node} out of range for a graph of {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("edge ({u}, {v}) has zero delay; delays must be positive")]
    ZeroDelay { u: u64, v: u64 },
    #[error("graph is disconnected: node {first} and node {second} lie in different components")]
    Disconnected { first: u64, second: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("a schedule needs at least one round")]
    NoRounds,
    #[error("seeding interval delta must be at least 1")]
    ZeroDelta,
    #[error("round {round} has no seeds")]
    EmptyRound { round: usize },
    #[error("round {round} seeds node {node}, but the graph has {node_count} nodes")]
    UnknownNode { round: usize, node: usize, node_count: usize },
    #[error("horizon T = {horizon} ends before the last seeding time t_k = {last_seed_time}")]
    HorizonTooShort { horizon: u64, last_seed_time: u64 },
    #[error("initial ages must be at least 1 (node {node} has {age})")]
    InitialAgeBelowOne { node: usize, age: u64 },
    #[error("initial age vector has {got} entries for {node_count} nodes")]
    InitialAgeLength { got: usize, node_count: usize },
    #[error("operation needs a uniform initial age")]
    NonUniformInitialAge,
    #[error("horizon T = {horizon} ends before node {node} receives the last seed at {arrival}")]
    IncompleteDiffusion { horizon: u64, node: usize, arrival: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedingError {
    #[error("requested {requested} seeds but the graph has only {node_count} nodes")]
    TooManySeeds { requested: usize, node_count: usize },
    #[error("exhaustive search over {space} sequences exceeds the cap of {cap}")]
    SearchSpaceTooLarge { space: u128, cap: u128 },
    #[error("at least one round and one seed per round are required")]
    EmptyRequest,
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bound needs at least {needed} nodes, graph has {got}")]
    TooFewNodes { needed: usize, got: usize },
    #[error("bound needs k >= 2 rounds, got {k}")]
    TooFewRounds { k: usize },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("failed to read edge list: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
