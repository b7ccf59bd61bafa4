//! Reference placements shipped with the crate, in the JSON placement format.

use crate::board::Placement;

pub const FIGURE1_JSON: &str = include_str!("../fixtures/figure1.json");
pub const FIGURE2_JSON: &str = include_str!("../fixtures/figure2.json");
pub const FIGURE3_JSON: &str = include_str!("../fixtures/figure3.json");

/// Chessboard pieces of the minimum 10-queen maximal placement on 9x9.
pub const FIGURE1_PIECES: [&str; 10] = ["Qb7", "Qb8", "Qc8", "Qc5", "Qd4", "Qd5", "Qe6", "Qe7", "Qf4", "Qf6"];
/// Good 5x5 placement with one lonely queen at centered (0, 2).
pub const FIGURE2_PIECES: [&str; 9] = ["Qa1", "Qe1", "Qb2", "Qd2", "Qb3", "Qd3", "Qa4", "Qe4", "Qc5"];
/// Octagon placement on 9x9 with the lonely queen in the center.
pub const FIGURE3_PIECES: [&str; 9] = ["Qe5", "Qd1", "Qf1", "Qa4", "Qi4", "Qa6", "Qi6", "Qd9", "Qf9"];
/// Squares of [`FIGURE3_PIECES`] where a queen can still be added.
pub const FIGURE3_CROSSES: [&str; 12] = ["b2", "h2", "c3", "e3", "g3", "c5", "g5", "c7", "e7", "g7", "b8", "h8"];

/// Looks a fixture up by name (`figure1`, `fig1`, ...).
pub fn by_name(name: &str) -> Option<Placement> {
    match name.trim_end_matches(".json") {
        "figure1" | "fig1" => Some(figure1()),
        "figure2" | "fig2" => Some(figure2()),
        "figure3" | "fig3" => Some(figure3()),
        _ => None,
    }
}

pub fn figure1() -> Placement {
    Placement::from_json(FIGURE1_JSON).expect("figure1 fixture")
}

pub fn figure2() -> Placement {
    Placement::from_json(FIGURE2_JSON).expect("figure2 fixture")
}

pub fn figure3() -> Placement {
    Placement::from_json(FIGURE3_JSON).expect("figure3 fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_matches_piece_lists() {
        assert_eq!(figure1(), Placement::from_algebraic(9, &FIGURE1_PIECES).unwrap());
        assert_eq!(figure2(), Placement::from_algebraic(5, &FIGURE2_PIECES).unwrap());
        assert_eq!(figure3(), Placement::from_algebraic(9, &FIGURE3_PIECES).unwrap());
        assert_eq!(by_name("fig3.json"), Some(figure3()));
        assert_eq!(by_name("nope"), None);
    }

    #[test]
    fn figure_two_centered() {
        let expected = Placement::from_centered(
            5,
            &[(-2, -2), (2, -2), (-1, -1), (1, -1), (-1, 0), (1, 0), (-2, 1), (2, 1), (0, 2)],
        )
        .unwrap();
        assert_eq!(figure2(), expected);
    }
}
