//! Fixture locations and the golden-file table shared by the test targets.

use std::path::{Path, PathBuf};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

/// Every golden case: file stem and the command line producing it.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    (
        "center_three_median",
        &["center", "--input", "three.csv", "--method", "median"],
    ),
    (
        "center_three_midrange",
        &["center", "--input", "three.csv", "--method", "midrange"],
    ),
    (
        "center_three_mean_bounds",
        &["center", "--input", "three.csv", "--method", "mean-bounds"],
    ),
    (
        "center_three_mean_midlen",
        &["center", "--input", "three.csv", "--method", "mean-midlen"],
    ),
    (
        "center_three_l2_hausdorff",
        &["center", "--input", "three.csv", "--method", "l2-hausdorff"],
    ),
    (
        "center_pair_l2_hausdorff",
        &["center", "--input", "pair.csv", "--method", "l2-hausdorff"],
    ),
    (
        "center_boxes_y_median",
        &[
            "center",
            "--input",
            "boxes.csv",
            "--method",
            "median",
            "--var",
            "y",
        ],
    ),
    (
        "cluster_groups_hausdorff_p2",
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "2",
            "--p",
            "2",
            "--distance",
            "hausdorff",
            "--seed",
            "7",
        ],
    ),
    (
        "cluster_groups_l2_bounds_normalized",
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "2",
            "--p",
            "2",
            "--distance",
            "l2-bounds",
            "--normalize",
            "--seed",
            "11",
        ],
    ),
    (
        "cluster_boxes_hausdorff_p1",
        &[
            "cluster",
            "--input",
            "boxes.csv",
            "--k",
            "2",
            "--p",
            "1",
            "--distance",
            "hausdorff",
            "--seed",
            "3",
        ],
    ),
    (
        "cluster_mixed_l2_hausdorff",
        &[
            "cluster",
            "--input",
            "mixed.csv",
            "--k",
            "3",
            "--p",
            "2",
            "--distance",
            "hausdorff",
            "--seed",
            "5",
        ],
    ),
    (
        "cluster_mixed_midlen_normalized",
        &[
            "cluster",
            "--input",
            "mixed.csv",
            "--k",
            "2",
            "--p",
            "2",
            "--distance",
            "l2-midlen",
            "--normalize",
            "--seed",
            "2",
        ],
    ),
    (
        "center_mixed_l2_hausdorff",
        &["center", "--input", "mixed.csv", "--method", "l2-hausdorff"],
    ),
    (
        "dist_boxes_hausdorff_q2",
        &[
            "dist",
            "--input",
            "boxes.csv",
            "--first",
            "p",
            "--second",
            "q",
            "--distance",
            "hausdorff",
            "--q",
            "2",
        ],
    ),
    (
        "dist_boxes_hausdorff_qinf",
        &[
            "dist",
            "--input",
            "boxes.csv",
            "--first",
            "p",
            "--second",
            "q",
            "--distance",
            "hausdorff",
            "--q",
            "inf",
        ],
    ),
    (
        "dist_flat_normalized",
        &[
            "dist",
            "--input",
            "flat_y.csv",
            "--first",
            "a",
            "--second",
            "c",
            "--distance",
            "hausdorff",
            "--q",
            "1",
            "--normalize",
        ],
    ),
];

/// Command lines run from the fixture directory and their exit codes.
pub const EXIT_CODE_CASES: &[(&[&str], i32)] = &[
    (
        &[
            "center",
            "--input",
            "malformed_header.csv",
            "--method",
            "median",
        ],
        2,
    ),
    (
        &["center", "--input", "lo_above_hi.csv", "--method", "median"],
        2,
    ),
    (
        &["center", "--input", "non_numeric.csv", "--method", "median"],
        2,
    ),
    (
        &[
            "center",
            "--input",
            "missing_field.csv",
            "--method",
            "median",
        ],
        2,
    ),
    (
        &["center", "--input", "missing.csv", "--method", "median"],
        2,
    ),
    (
        &[
            "center",
            "--input",
            "three.csv",
            "--method",
            "median",
            "--var",
            "z",
        ],
        2,
    ),
    (&["center", "--input", "three.csv", "--method", "mode"], 1),
    (&["center", "--input", "three.csv"], 1),
    (
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "3",
            "--p",
            "2",
            "--distance",
            "hausdorff",
        ],
        2,
    ),
    (
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "2",
            "--p",
            "inf",
            "--distance",
            "hausdorff",
        ],
        1,
    ),
    (
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "2",
            "--p",
            "1",
            "--distance",
            "l2-bounds",
        ],
        1,
    ),
    (
        &[
            "cluster",
            "--input",
            "groups.csv",
            "--k",
            "0",
            "--p",
            "1",
            "--distance",
            "hausdorff",
        ],
        1,
    ),
    (
        &[
            "dist",
            "--input",
            "boxes.csv",
            "--first",
            "p",
            "--second",
            "zz",
            "--distance",
            "hausdorff",
            "--q",
            "2",
        ],
        2,
    ),
    (
        &[
            "dist",
            "--input",
            "boxes.csv",
            "--first",
            "p",
            "--second",
            "q",
            "--distance",
            "l1-bounds",
            "--q",
            "2",
            "--normalize",
        ],
        1,
    ),
    (&["frobnicate"], 1),
    (&["--version"], 0),
];
