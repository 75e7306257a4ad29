//! Perversities, Deligne sheaves and mezzoperversities.

mod build;
mod dual;
mod mezzo;
mod pairing;
mod perversity;

pub use build::{build_ic, build_with, witt_report, DeligneBuild, Stage, StageDecision, WittEntry, WittReport};
pub use dual::{dual_mezzo, lspace_check, LSpaceComponent, LSpaceReport, Verdict};
pub use mezzo::{build_refined, extract_mezzo, validate_mezzo, ChoiceSpec, MezzoEntry, MezzoSpec, Mezzoperversity};
pub use pairing::{coherent_orientation, cup_pairing, is_depth_one, link_pairing, LinkPairing};
pub use perversity::{lower_middle, upper_middle, Perversity};
