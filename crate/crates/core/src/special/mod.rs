//! Special functions: complex erfc, log-gamma, regularised incomplete gamma
//! and its uniform and outer asymptotic expansions.

mod erfc;
mod gamma;
mod incgamma;
mod series;
mod szego;
mod temme;

pub use erfc::{erfc, erfc_c, erfcx_c, half_erfc_exp};
pub(crate) use gamma::lgamma;
pub use gamma::{ln_gamma, stirling_remainder};
pub use incgamma::{log1pmx, reg_gamma_p, reg_gamma_pq, reg_gamma_q};
pub use szego::{szego_poly, szego_q_expansion};
pub use temme::{q_center, temme_coefficient, temme_eta, temme_q, STIRLING_GAMMA};
