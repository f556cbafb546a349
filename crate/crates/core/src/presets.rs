//! Rows of the two published energy tables for the A = 56 parameter set.
//!
//! Table 1 also prints an `l = 15` row with no `n`; it is left out.

use serde::Serialize;

use crate::spectrum::QuantumNumbers;

/// One printed row: `(l, n, V0min, V0max, V0, E)`, energies in MeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub l: u32,
    pub n: u32,
    pub v0_min: f64,
    pub v0_max: f64,
    pub v0: f64,
    pub energy: f64,
}

impl TableRow {
    pub fn qn(&self) -> QuantumNumbers {
        QuantumNumbers::new(self.n, self.l)
    }
}

const fn row(l: u32, n: u32, v0_min: f64, v0_max: f64, v0: f64, energy: f64) -> TableRow {
    TableRow {
        l,
        n,
        v0_min,
        v0_max,
        v0,
        energy,
    }
}

pub const TABLE_1: &[TableRow] = &[
    row(1, 0, 3.5590, 3.7191, 3.6, 2.3374),
    row(2, 0, 10.2654, 11.5690, 10.5, 7.0068),
    row(3, 0, 19.5398, 24.1289, 20.0, 14.0327),
    row(4, 0, 30.8571, 41.9241, 35.0, 22.6509),
    row(5, 0, 43.8248, 65.3471, 47.78, 34.7761),
    row(6, 0, 58.1722, 94.6684, 90.0, 35.3171),
    row(7, 0, 73.7179, 130.0696, 120.0, 46.5875),
    row(8, 0, 90.3395, 171.6730, 160.0, 54.5035),
    row(9, 0, 107.9536, 219.5620, 200.0, 67.4620),
    row(10, 0, 126.5020, 273.7949, 240.0, 85.1164),
    row(11, 0, 145.9433, 334.4129, 270.0, 102.6090),
    row(12, 0, 166.2474, 401.4463, 284.0, 153.2491),
    row(12, 1, 282.9924, 284.7013, 284.0, 182.4285),
    row(13, 0, 187.3992, 474.9172, 330.0, 177.8142),
    row(13, 1, 326.8691, 335.4402, 330.0, 212.6080),
    row(14, 0, 209.3607, 554.8423, 390.0, 198.7520),
    row(14, 1, 371.7128, 392.4902, 390.0, 237.9290),
    row(15, 0, 232.1402, 641.2347, 450.0, 223.1066),
    row(20, 0, 357.9160, 1170.4901, 764.2, 390.3832),
    row(20, 1, 659.4146, 868.9915, 764.2, 465.7578),
    row(20, 2, 764.1028, 764.3034, 764.2, 491.9299),
    row(30, 0, 667.3430, 2716.9849, 1690.0, 834.2010),
    row(30, 1, 1204.0683, 2180.2595, 1690.0, 968.3811),
    row(30, 2, 1543.9833, 1840.3445, 1690.0, 1053.3543),
    row(30, 3, 1687.0879, 1697.2400, 1690.0, 1088.9078),
];

pub const TABLE_2: &[TableRow] = &[
    row(40, 0, 1052.7566, 4915.3065, 3000.0, 1430.1249),
    row(40, 1, 1826.2400, 4144.8220, 3000.0, 1623.4737),
    row(40, 2, 2402.9130, 3565.1490, 3000.0, 1767.5873),
    row(40, 3, 2782.7757, 3185.2864, 3000.0, 1862.3459),
    row(40, 4, 2965.8279, 3002.2441, 3000.0, 1904.9234),
    row(50, 0, 1513.7067, 7765.9020, 4600.0, 2225.1111),
    row(50, 1, 2524.5792, 6755.0294, 4600.0, 2477.7687),
    row(50, 2, 3338.6413, 5940.9673, 4600.0, 2681.1670),
    row(50, 3, 3955.8930, 5323.7156, 4600.0, 2835.2052),
    row(50, 4, 4376.3344, 4903.2743, 4600.0, 2939.3913),
    row(50, 5, 4599.9653, 4679.6434, 4600.0, 2986.8600),
    row(100, 0, 4948.2206, 31806.3078, 18400.0, 8461.6670),
    row(100, 1, 7148.9350, 29605.5934, 18400.0, 9011.8467),
    row(100, 2, 9152.8390, 27601.6894, 18400.0, 9512.8202),
    row(100, 3, 10959.9356, 25794.5958, 18400.0, 9964.5902),
    row(100, 4, 12570.2158, 24184.3126, 18400.0, 10367.1561),
    row(100, 5, 13983.6886, 22770.8398, 18400.0, 10720.5172),
    row(100, 6, 15200.3509, 21554.1774, 18400.0, 11024.6715),
    row(100, 7, 16220.2029, 20534.3254, 18400.0, 11279.6153),
    row(100, 8, 17043.2445, 19711.2838, 18400.0, 11485.3387),
    row(100, 9, 17669.4757, 19085.0526, 18400.0, 11641.8108),
    row(100, 10, 18098.8965, 18655.6319, 18400.0, 11748.8843),
    row(100, 11, 18331.5069, 18423.0215, 18400.0, 11804.6769),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TablePreset {
    PaperTable1,
    PaperTable2,
}

impl TablePreset {
    pub fn rows(self) -> &'static [TableRow] {
        match self {
            TablePreset::PaperTable1 => TABLE_1,
            TablePreset::PaperTable2 => TABLE_2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TablePreset::PaperTable1 => "paper-table-1",
            TablePreset::PaperTable2 => "paper-table-2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "paper-table-1" => Some(TablePreset::PaperTable1),
            "paper-table-2" => Some(TablePreset::PaperTable2),
            _ => None,
        }
    }
}
