mod common;

use common::{spec, TABLE};
use turancert::rat;

#[test]
fn every_fixture_loads() {
    for name in ["baxter", "h", "factorial"].into_iter().chain(TABLE.iter().map(|t| t.0)) {
        let s = spec(name);
        assert_eq!(s.name, name);
    }
}

#[test]
fn known_prefixes() {
    let cases: [(&str, &[i64]); 10] = [
        ("baxter", &[1, 1, 2, 6, 22, 92, 422, 2074, 10754]),
        ("h", &[1, 0, 1, 6, 90, 2040, 67950, 3110940]),
        ("fine", &[1, 0, 1, 2, 6, 18, 57, 186, 622]),
        ("motzkin", &[1, 1, 2, 4, 9, 21, 51, 127, 323]),
        ("cohen", &[1, 5, 73, 1445, 33001, 819005]),
        ("schroeder", &[1, 2, 6, 22, 90, 394, 1806, 8558]),
        ("polyhex", &[1, 1, 3, 10, 36, 137, 543, 2219]),
        ("walks", &[1, 4, 17, 76, 354, 1704, 8421, 42508]),
        ("t", &[1, 1, 3, 21, 282, 6210, 202410]),
        ("domb", &[1, 4, 28, 256, 2716, 31504]),
    ];
    for (name, prefix) in cases {
        let s = spec(name);
        let got = s.sequence().terms(0, prefix.len() as i64 - 1).unwrap();
        let want: Vec<_> = prefix.iter().map(|&v| rat(v)).collect();
        assert_eq!(got, want, "{name}");
    }
}
