//! More random instances than the acceptance run, skewed towards finitely
//! many holes: one or two rows and larger entries.

mod common;

#[test]
fn numerical_semigroups_agree_with_oracle() {
    match common::check_seeds(1000..1150, 1, 4, 9) {
        Ok(t) => {
            println!("{t}");
            assert!(t.finite > 50, "{t}");
        }
        Err(f) => panic!("{} disagreements: {f:#?}", f.len()),
    }
}

#[test]
fn planar_instances_agree_with_oracle() {
    match common::check_seeds(2000..2100, 2, 4, 5) {
        Ok(t) => println!("{t}"),
        Err(f) => panic!("{} disagreements: {f:#?}", f.len()),
    }
}
