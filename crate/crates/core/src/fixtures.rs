//! Worked-example maps shipped with the crate (`fixtures/` in the source
//! tree), keyed by their example number.
//!
//! | id | n | notes |
//! |----|---|-------|
//! | 4  | 4 | impulse stable |
//! | 7  | 4 | unstable, spectral radius 2^(1/3) |
//! | 9  | 4 | vertex 1 has no outgoing edges |
//! | 11 | 7 | solid waste removal |
//! | 13 | 7 | electricity consumption |
//! | 15 | 7 | sanitary condition, impulse stable |
//! | 17 | 7 | map 15 scaled by 2, unstable |

use crate::map::{load_map, CognitiveMap, LoadOptions, MapFormat};

pub const IDS: [u32; 7] = [4, 7, 9, 11, 13, 15, 17];

fn csv_source(id: u32) -> Option<&'static str> {
    Some(match id {
        4 => include_str!("../fixtures/m04.csv"),
        7 => include_str!("../fixtures/m07.csv"),
        9 => include_str!("../fixtures/m09.csv"),
        11 => include_str!("../fixtures/m11.csv"),
        13 => include_str!("../fixtures/m13.csv"),
        15 => include_str!("../fixtures/m15.csv"),
        17 => include_str!("../fixtures/m17.csv"),
        _ => return None,
    })
}

/// The fixture map with the given id, or `None` for an unknown id.
pub fn map(id: u32) -> Option<CognitiveMap> {
    let text = csv_source(id)?;
    Some(
        load_map(text.as_bytes(), MapFormat::Csv, LoadOptions::default())
            .expect("bundled fixture is valid"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for id in IDS {
            let m = map(id).unwrap();
            assert!(m.n() == 4 || m.n() == 7);
        }
        assert!(map(5).is_none());
    }

    #[test]
    fn seventeen_is_fifteen_doubled() {
        let doubled = map(15).unwrap().scale(2.0).unwrap();
        assert_eq!(doubled.row_major(), map(17).unwrap().row_major());
    }
}
