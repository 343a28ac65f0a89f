//! Domino tilings of cubiculated regions in dimension n >= 3.

pub mod error;
pub mod hamiltonian;
pub mod kasteleyn;
pub mod linalg;
pub mod moves;
pub mod plug;
pub mod region;
pub mod render;
pub mod tiling;
pub mod transfer;
pub mod unionfind;

pub use error::{Error, Result};
pub use plug::Plug;
pub use region::{make_box, make_cork, make_cylinder, Cell, Color, Region, RegionKind};
pub use tiling::{concat, count_tilings, decompose_floors, enumerate_tilings, find_tiling, vertical_tiling, Domino, Tiling, TilingKey};
pub use kasteleyn::{canonical_sign, defect_by_determinant, defect_by_enumeration, twist, SignSystem, TwistValue};
pub use moves::{flip_components, flip_connected, flip_neighbors, trit_neighbors, ComponentReport, ConnectStatus};
pub use transfer::{build_transfer, enumerate_plugs, TransferMatrices};
pub use hamiltonian::{box_path, flux, flux_set, fold, generator_set, generator_tiling, respects_path, unfold, FluxValue, GeneratorTiling, HamiltonianPath};
