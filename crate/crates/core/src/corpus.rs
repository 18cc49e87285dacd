//! The four bundled worked examples, embedded at compile time.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleInput {
    pub file_name: &'static str,
    #[serde(skip)]
    pub text: &'static str,
}

/// What the acceptance suite expects from an example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub singular_points: usize,
    pub group_order: u64,
    pub su_cones: Vec<&'static str>,
    pub vertex_count: usize,
    pub two_face_count: usize,
    /// Generators of the kernel whose positive part is the balancing family.
    pub kernel_generators: Option<Vec<Vec<i64>>>,
    pub kernel_family: Option<&'static str>,
    pub balancing_feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub inputs: Vec<ExampleInput>,
    pub expected: Expected,
}

impl Example {
    pub fn input(&self, extension: &str) -> Option<&ExampleInput> {
        self.inputs.iter().find(|i| i.file_name.ends_with(extension))
    }
}

const P1XP1_FAN: &str = include_str!("../data/p1xp1-z2.fan");
const P1XP1_ORB: &str = include_str!("../data/p1xp1-z2.orb");
const P2Z3_FAN: &str = include_str!("../data/p2-z3.fan");
const P2Z3_ORB: &str = include_str!("../data/p2-z3.orb");
const X1_FAN: &str = include_str!("../data/x1.fan");
const X4_FAN: &str = include_str!("../data/x4.fan");

pub fn embedded_examples() -> Vec<Example> {
    vec![
        Example {
            name: "p1xp1-z2",
            description: "P^1 x P^1 / Z_2 with four A_1 points",
            inputs: vec![
                ExampleInput { file_name: "p1xp1-z2.fan", text: P1XP1_FAN },
                ExampleInput { file_name: "p1xp1-z2.orb", text: P1XP1_ORB },
            ],
            expected: Expected {
                singular_points: 4,
                group_order: 2,
                su_cones: vec!["C1", "C2", "C3", "C4"],
                vertex_count: 4,
                two_face_count: 1,
                kernel_generators: Some(vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]]),
                kernel_family: Some("(a,b,b,a)"),
                balancing_feasible: true,
            },
        },
        Example {
            name: "p2-z3",
            description: "P^2 / Z_3 with weights (1,2) and three fixed points",
            inputs: vec![
                ExampleInput { file_name: "p2-z3.fan", text: P2Z3_FAN },
                ExampleInput { file_name: "p2-z3.orb", text: P2Z3_ORB },
            ],
            expected: Expected {
                singular_points: 3,
                group_order: 3,
                su_cones: vec!["C1", "C2", "C3"],
                vertex_count: 3,
                two_face_count: 1,
                kernel_generators: Some(vec![vec![1, 1, 1]]),
                kernel_family: Some("(a,a,a)"),
                balancing_feasible: true,
            },
        },
        Example {
            name: "x1",
            description: "toric Fano threefold X^(1), polarized by -3K",
            inputs: vec![ExampleInput { file_name: "x1.fan", text: X1_FAN }],
            expected: Expected {
                singular_points: 12,
                group_order: 3,
                su_cones: vec!["C1", "C4", "C5", "C7", "C11", "C12"],
                vertex_count: 12,
                two_face_count: 8,
                kernel_generators: None,
                kernel_family: None,
                balancing_feasible: true,
            },
        },
        Example {
            name: "x4",
            description: "toric Fano threefold X^(4), polarized by -5K",
            inputs: vec![ExampleInput { file_name: "x4.fan", text: X4_FAN }],
            expected: Expected {
                singular_points: 8,
                group_order: 5,
                su_cones: vec!["C1", "C4", "C7", "C8"],
                vertex_count: 8,
                two_face_count: 6,
                kernel_generators: None,
                kernel_family: None,
                balancing_feasible: true,
            },
        },
    ]
}

pub fn example(name: &str) -> Option<Example> {
    embedded_examples().into_iter().find(|e| e.name == name)
}

/// Every bundled file, sorted by file name.
pub fn corpus_files() -> Vec<ExampleInput> {
    let mut files: Vec<ExampleInput> = embedded_examples().into_iter().flat_map(|e| e.inputs).collect();
    files.sort_by_key(|f| f.file_name);
    files
}
