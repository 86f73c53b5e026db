pub mod bigfloat;
pub mod curve;
pub mod error;
pub mod factor;
pub mod family;
pub mod linalg;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod rat;
pub mod roots;
pub mod saturation;
pub mod series;
pub mod upoly;
pub mod ypoly;

pub use error::{Error, Result};
pub use numfield::{AlgNum, Elem, KPoly, NumberField};
pub use parse::{parse_family, parse_polynomial};
pub use poly::{BiPoly, TriPoly};
pub use rat::{Order, Rat};
pub use upoly::UPoly;
