//! Gauss–Legendre nodes and weights on [−1, 1].
pub const GL5: [(f64, f64); 5] = [
    (-0.906179845938664, 0.23692688505618942),
    (-0.5384693101056831, 0.4786286704993662),
    (0.0, 0.568888888888889),
    (0.5384693101056831, 0.4786286704993662),
    (0.906179845938664, 0.23692688505618942),
];

pub const GL8: [(f64, f64); 8] = [
    (-0.9602898564975362, 0.10122853629037669),
    (-0.7966664774136267, 0.22238103445337434),
    (-0.525532409916329, 0.31370664587788705),
    (-0.18343464249564978, 0.36268378337836177),
    (0.18343464249564978, 0.36268378337836177),
    (0.525532409916329, 0.31370664587788705),
    (0.7966664774136267, 0.22238103445337434),
    (0.9602898564975362, 0.10122853629037669),
];
