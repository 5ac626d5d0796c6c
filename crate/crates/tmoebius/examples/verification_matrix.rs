//! Runs the fast rows of the verification suite and prints the
//! matrix. Pass criterion numbers as arguments to choose rows; the
//! full suite including the long census is `verify --suite all` on
//! the command line.

use tmoebius::verify::{run_suite, CRITERION_COUNT};

fn main() {
    let mut indices: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .filter(|&i| i >= 1 && i <= CRITERION_COUNT)
        .collect();
    if indices.is_empty() {
        indices = vec![1, 3, 4, 9];
    }
    for report in run_suite(&indices) {
        println!("{report}");
        for line in &report.details {
            println!("    {line}");
        }
    }
}
