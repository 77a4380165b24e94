//! Finite point sets in `R^n`: their symmetry groups, the dilation identity
//! `|W(x) - W(x')|^2 = d |x - x'|^2`, and isometric embeddings into scaled
//! powers with monochromatic orbits.

mod embed;
mod points;
mod symmetry;

pub use embed::{cor17_embed, cor17_setup, dilation_check, Cor17Setup, DilationReport, Embedding};
pub use points::{PointSet, Scalar};
pub use symmetry::{symmetry_group, Symmetry};
