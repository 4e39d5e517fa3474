//! Seeded searches and checks for extremal covering configurations.

mod anneal;
mod cip;
mod config;
mod constants;
mod hadwiger;
mod pack;
mod satellite;
mod wbcp;

pub use cip::{
    cip_check, cip_trials, largest_working_shrink, random_common_point_family, witness_holds, CipTrials, CipVerdict,
    WITNESS_SLACK,
};
pub use config::{SearchConfig, SearchResult};
pub use constants::{check_chain, constants_markdown, constants_report, paper_value, ChainCheck, ConstantName, ConstantsRow, PaperValue};
pub use hadwiger::{construct_strict_hadwiger, search_strict_hadwiger, verify_strict_hadwiger};
pub use pack::{pack_unit_balls_radius5, verify_radius5_packing};
pub use satellite::{satellite_max_search, LAMBDA_LADDER};
pub use wbcp::{search_max_besicovitch_family, search_max_k_configuration};
