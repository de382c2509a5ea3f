//! Published dimension tables, used to mark computed cells as matching,
//! mismatching or new. Blank cells in the published tables are `None`.

/// Columns that have published values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    Conjugation,
    Logsignature,
    MinGenerators,
    V,
    BracketVr,
    LetterReducedConj,
    LetterReducedLoop,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::Conjugation,
        Column::Logsignature,
        Column::MinGenerators,
        Column::V,
        Column::BracketVr,
        Column::LetterReducedConj,
        Column::LetterReducedLoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Conjugation => "conjugation",
            Column::Logsignature => "logsignature",
            Column::MinGenerators => "min_generators",
            Column::V => "v",
            Column::BracketVr => "bracket_vr",
            Column::LetterReducedConj => "letter_reduced_conj",
            Column::LetterReducedLoop => "letter_reduced_loop",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

type Row = [Option<u64>; 7];

const fn r(c: i64, l: i64, g: i64, v: i64, b: i64, rc: i64, rl: i64) -> Row {
    // -1 marks a blank cell
    const fn o(x: i64) -> Option<u64> {
        if x < 0 {
            None
        } else {
            Some(x as u64)
        }
    }
    [o(c), o(l), o(g), o(v), o(b), o(rc), o(rl)]
}

const D2: &[Row] = &[
    r(2, 2, 2, 0, 0, 0, 0),
    r(3, 1, 0, 1, 0, 0, 1),
    r(4, 2, 0, 2, 2, 0, 0),
    r(6, 3, 1, 4, 3, 1, 1),
    r(8, 6, 0, 8, 8, 0, 0),
    r(14, 9, 4, 16, 12, 4, 4),
    r(20, -1, 0, 32, 32, 0, 0),
    r(36, -1, 9, 64, 54, 10, 10),
    r(60, -1, 8, 128, 120, 8, 8),
    r(108, -1, 20, 256, 232, 24, 24),
    r(188, -1, 32, 512, 480, 32, 32),
    r(352, -1, 68, 1024, 940, -1, -1),
    r(632, -1, -1, 2048, 1932, -1, -1),
];

const D3: &[Row] = &[
    r(3, 3, 3, 0, 0, 0, 0),
    r(6, 3, 0, 3, 0, 0, 3),
    r(11, 8, 1, 8, 8, 0, 0),
    r(24, 18, 6, 24, 18, 6, 6),
    r(51, 48, 6, 72, 66, 6, 6),
    r(130, 116, 38, 216, 178, 38, 38),
    r(315, -1, 54, 648, 594, 54, 54),
    r(834, -1, -1, 1944, 1716, 228, 228),
    r(2195, -1, -1, 5832, 5324, 508, 508),
    r(5934, -1, -1, 17496, 15960, -1, -1),
];

const D4: &[Row] = &[
    r(4, -1, 4, 0, 0, 0, 0),
    r(10, -1, 0, 6, 0, 0, 6),
    r(24, -1, 4, 20, 20, 0, 0),
    r(70, -1, 20, 81, 60, 20, 21),
    r(208, -1, 36, 324, 288, 36, 36),
    r(700, -1, -1, 1296, 1094, 202, 202),
    r(2344, -1, -1, 5184, 4648, 536, 536),
    r(8230, -1, -1, 20736, 18444, 2292, 2292),
    r(29144, -1, -1, 82944, -1, -1, -1),
    r(104968, -1, -1, 331776, -1, -1, -1),
];

const D5: &[Row] = &[
    r(5, -1, 5, 0, 0, 0, 0),
    r(15, -1, 0, 10, 0, 0, 10),
    r(45, -1, 10, 40, 40, 0, 0),
    r(165, -1, 50, 205, 150, 50, 55),
    r(629, -1, 127, 1024, 898, 126, 126),
    r(2635, -1, -1, 5120, 4360, 760, 760),
    r(11165, -1, -1, 25600, 22760, 2840, 2840),
    r(48915, -1, -1, 128000, 114070, 13930, 13930),
    r(217045, -1, -1, 640000, -1, -1, -1),
    r(976887, -1, -1, 3200000, -1, -1, -1),
];

const D6: &[Row] = &[
    r(6, -1, 6, 0, 0, 0, 0),
    r(21, -1, 0, 15, 0, 0, 15),
    r(76, -1, 20, 70, 70, 0, 0),
    r(336, -1, 105, 435, 315, 105, 120),
    r(1560, -1, -1, 2604, 2268, 336, 336),
    r(7826, -1, -1, 15625, 13356, 2268, 2269),
    r(39996, -1, -1, 93750, 83010, 10740, 10740),
    r(210126, -1, -1, 562500, -1, -1, -1),
    r(1119796, -1, -1, -1, -1, -1, -1),
    r(6047412, -1, -1, -1, -1, -1, -1),
];

/// Published value of `column` at `(d, level)`, if any.
pub fn lookup(d: usize, level: usize, column: Column) -> Option<u64> {
    let table = match d {
        2 => D2,
        3 => D3,
        4 => D4,
        5 => D5,
        6 => D6,
        _ => return None,
    };
    table.get(level.checked_sub(1)?)?[column.index()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Match,
    Mismatch,
    New,
}

impl Mark {
    pub fn as_str(self) -> &'static str {
        match self {
            Mark::Match => "match",
            Mark::Mismatch => "mismatch",
            Mark::New => "new",
        }
    }
}

pub fn mark(d: usize, level: usize, column: Column, computed: u64) -> Mark {
    match lookup(d, level, column) {
        None => Mark::New,
        Some(v) if v == computed => Mark::Match,
        Some(_) => Mark::Mismatch,
    }
}
