//! Weil numbers, endomorphism algebras of simple abelian varieties over
//! finite fields, and good embeddings of polarized algebras.

pub mod embed;
pub mod factor;
pub mod poly;
pub mod tate;
pub mod weil;

pub use embed::{good_embedding, parse_algebra, parse_place, EmbedOptions, Embedding, Obstruction};
pub use poly::{IntPoly, QPoly};
pub use tate::{newton_polygon, tate_report, Classification, EndAlgebraReport, NewtonSegment, TatePlace};
pub use weil::{is_weil_number, WeilCertificate, WeilCheck, WeilNumber};
