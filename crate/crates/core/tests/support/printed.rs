//! Vertex and face lists as printed for the two threefold examples.

pub const X1_VERTICES: [[i64; 3]; 12] = [
    [0, -2, -3], [-3, 0, 0], [-3, 1, 3], [0, 0, 3], [3, -2, 0], [0, 2, 3],
    [0, 0, -3], [-3, 2, 0], [-3, 3, 3], [3, 0, 0], [3, -1, -3], [3, -3, -3],
];

pub fn x1_faces() -> Vec<Vec<[i64; 3]>> {
    vec![
        vec![[0, -2, -3], [3, -3, -3], [-3, 0, 0], [-3, 1, 3], [0, 0, 3], [3, -2, 0]],
        vec![[-3, 1, 3], [0, 0, 3], [0, 2, 3], [-3, 3, 3]],
        vec![[0, 0, 3], [3, -2, 0], [0, 2, 3], [3, 0, 0]],
        vec![[0, -2, -3], [-3, 0, 0], [0, 0, -3], [-3, 2, 0]],
        vec![[3, -1, -3], [0, 2, 3], [0, 0, -3], [-3, 2, 0], [-3, 3, 3], [3, 0, 0]],
        vec![[-3, 0, 0], [-3, 1, 3], [-3, 2, 0], [-3, 3, 3]],
        vec![[3, -1, -3], [0, -2, -3], [3, -3, -3], [0, 0, -3]],
        vec![[3, -1, -3], [3, -3, -3], [3, -2, 0], [3, 0, 0]],
    ]
}

pub const X1_CONE_VERTICES: [(&str, [i64; 3]); 6] = [
    ("C1", [3, 0, 0]),
    ("C4", [3, -3, -3]),
    ("C5", [0, 0, 3]),
    ("C7", [-3, 3, 3]),
    ("C11", [-3, 0, 0]),
    ("C12", [0, 0, -3]),
];

pub const X1_SU: [&str; 6] = ["C1", "C4", "C5", "C7", "C11", "C12"];

pub const X4_VERTICES: [[i64; 3]; 8] =
    [[5, -1, -2], [5, 0, -5], [-5, -2, 1], [-5, 0, 0], [5, 5, -5], [-5, -5, 10], [-5, -3, 9], [5, 6, -8]];

pub fn x4_faces() -> Vec<Vec<[i64; 3]>> {
    vec![
        vec![[5, 0, -5], [-5, -2, 1], [-5, 0, 0], [5, 6, -8]],
        vec![[5, -1, -2], [5, 0, -5], [-5, -2, 1], [-5, -5, 10]],
        vec![[5, -1, -2], [5, 0, -5], [5, 5, -5], [5, 6, -8]],
        vec![[5, -1, -2], [5, 5, -5], [-5, -5, 10], [-5, -3, 9]],
        vec![[-5, -2, 1], [-5, 0, 0], [-5, -5, 10], [-5, -3, 9]],
        vec![[-5, 0, 0], [5, 5, -5], [-5, -3, 9], [5, 6, -8]],
    ]
}

pub const X4_SU: [&str; 4] = ["C1", "C4", "C7", "C8"];
