//! The pub-behaviour systems and the mix-condition example, shipped as text
//! files under `fixtures/`.

use crate::io::parse_system;
use crate::system::Pointed;

pub const FIG1: &str = include_str!("../fixtures/fig1.mts");
pub const FIG3: &str = include_str!("../fixtures/fig3.mts");
pub const FIG4_LEFT: &str = include_str!("../fixtures/fig4-left.mts");
pub const FIG4_RIGHT: &str = include_str!("../fixtures/fig4-right.mts");
pub const FIG8: &str = include_str!("../fixtures/fig8.mts");

fn load(text: &str) -> Pointed {
    parse_system(text).expect("bundled fixture parses")
}

/// Pub specification: Waits, Drinks, Talks.
pub fn fig1() -> Pointed {
    load(FIG1)
}

/// Refinement of [`fig1`] with Bob and Tom.
pub fn fig3() -> Pointed {
    load(FIG3)
}

/// Mixed system satisfying the mix condition.
pub fn fig4_left() -> Pointed {
    load(FIG4_LEFT)
}

/// Modal normal form of [`fig4_left`].
pub fn fig4_right() -> Pointed {
    load(FIG4_RIGHT)
}

/// Depth-1 unfolding of [`fig3`] from TomDrinks.
pub fn fig8() -> Pointed {
    load(FIG8)
}

pub fn all() -> Vec<Pointed> {
    vec![fig1(), fig3(), fig4_left(), fig4_right(), fig8()]
}
