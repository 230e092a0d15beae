//! The symbolic match table against a hand-written golden copy and against
//! numerical seam matching of concrete random sheets.

use qfreq::homogeneous::{
    build_match_table, match_pair, random_form, read_table_csv, Continuation, FormTag,
    FrequencyClass, FourTuple, Partner, RowClass,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: &str = include_str!("data/match_table.csv");

#[test]
fn table_equals_golden_file() {
    let golden = read_table_csv(GOLDEN.as_bytes()).unwrap();
    let built: Vec<_> = build_match_table().iter().map(|r| r.to_record()).collect();
    assert_eq!(built, golden);
}

fn tuple(tag: FormTag, rng: &mut ChaCha8Rng) -> FourTuple {
    random_form(tag, rng).to_tuple().unwrap()
}

#[test]
fn rows_agree_with_numerical_matching() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for row in build_match_table() {
        let Partner::Form(fj) = row.form_j else { continue };
        if row.class == RowClass::Excluded {
            continue;
        }
        for _ in 0..20 {
            let t1 = tuple(row.form_i, &mut rng);
            let t2 = tuple(fj, &mut rng);
            if row.form_i == FormTag::F7 && fj == FormTag::F7 {
                continue;
            }
            let Ok(m) = match_pair(t1, t2) else {
                panic!("{:?}/{:?} failed to match", row.form_i, fj)
            };
            assert_eq!(m.sum_admissible.is_admissible(), row.sum_admissible, "{row:?}");
            match row.continuation {
                Continuation::Identity => {
                    let RowClass::Class(c) = row.class else { unreachable!() };
                    assert_eq!(m.identity_class, c, "{row:?}");
                }
                Continuation::Swap if row.class == RowClass::Class(FrequencyClass::OddHalfIntegers) => {
                    // The swap solution needs the second sheet to be the negated first.
                    let m = match_pair(t1, -t1).unwrap();
                    assert_eq!(m.swap_class, FrequencyClass::OddHalfIntegers);
                    assert_eq!(m.constraints, row.constraints);
                    assert_ne!(match_pair(t1, t2).unwrap().swap_class, FrequencyClass::OddHalfIntegers);
                }
                Continuation::Swap => {
                    assert!(!FrequencyClass::contains(m.swap_class, 1.5), "{row:?}");
                }
            }
        }
    }
}
