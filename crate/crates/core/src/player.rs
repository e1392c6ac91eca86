use std::fmt;

use serde::Serialize;

/// One of the four diners. The discriminant is the qubit index: Alice holds
/// `q[0]` (the most significant bit of an outcome index), Doug holds `q[3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Player {
    Alice = 0,
    Bob = 1,
    Colin = 2,
    Doug = 3,
}

impl Player {
    pub const ALL: [Player; 4] = [Player::Alice, Player::Bob, Player::Colin, Player::Doug];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Player> {
        Self::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Player::Alice => 'A',
            Player::Bob => 'B',
            Player::Colin => 'C',
            Player::Doug => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Player> {
        match c.to_ascii_uppercase() {
            'A' => Some(Player::Alice),
            'B' => Some(Player::Bob),
            'C' => Some(Player::Colin),
            'D' => Some(Player::Doug),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Player::Alice => "Alice",
            Player::Bob => "Bob",
            Player::Colin => "Colin",
            Player::Doug => "Doug",
        };
        f.write_str(name)
    }
}
