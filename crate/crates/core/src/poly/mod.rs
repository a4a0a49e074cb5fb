mod bi;
pub mod gadgets;
mod parse;
mod uni;

pub use bi::BiPoly;
pub use gadgets::{
    delta_k, is_injective_over, k_p_set, max_fiber_size, mu_transform, normal_forms, nu_transform, phi_p, pi_transform,
    recognize_char_power, recognize_rho_power, rho, NormalForm,
};
pub use parse::{parse_bipoly, parse_unipoly};
pub(crate) use uni::same_field;
pub use uni::UniPoly;
