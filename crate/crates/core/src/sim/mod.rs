//! Congested Clique cost model: round ledger, routing and LOCAL simulation.

pub mod ledger;
pub mod local;
pub mod route;

pub use ledger::{gather_counts, gather_to_node, RoundLedger, RoundRecord, Traffic, DEFAULT_C_L};
pub use local::{run_synchronous, simulate_local, LocalAlgorithm, LubyMis, LubyStatus, ProposalMatching};
pub use route::{op_route, NeighborhoodView, RouteError, RouteOutcome};
