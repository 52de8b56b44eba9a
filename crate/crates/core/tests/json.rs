use oddquad::catalog::{self, CatalogKey};
use oddquad::extensions::decompose_weak_filiform;
use oddquad::flags::detect_weak_filiform;
use oddquad::io::{emit_algebra, extension_doc, load_algebra, load_extension_data};
use oddquad::scalar::rat;
use oddquad::{Error, Scalar};

#[test]
fn every_standard_entry_round_trips() {
    for key in CatalogKey::standard() {
        let e = key.build().unwrap();
        let text = emit_algebra(&e.algebra, e.form.as_ref());
        let (g, b) = load_algebra(&text).unwrap();
        assert!(g.same_constants(&e.algebra), "{key}");
        assert_eq!(g.names(), e.algebra.names());
        assert_eq!(b, e.form, "{key}");
        assert_eq!(emit_algebra(&g, b.as_ref()), text, "{key}: emission is not canonical");
    }
}

#[test]
fn accepts_bare_integers_fractions_and_radicals() {
    let text = r#"{
        "even": ["X"], "odd": ["e", "f"],
        "brackets": [{"x": "e", "y": "f", "value": {"X": {"a": "1/2", "b": "3", "d": "2"}}},
                     {"x": "e", "y": "e", "value": {"X": 2}}],
        "form": [{"even": "X", "odd": "e", "value": "-3/4"}]
    }"#;
    let (g, b) = load_algebra(text).unwrap();
    let ef = g.basis_bracket(g.index("e").unwrap(), g.index("f").unwrap());
    assert_eq!(ef[0], Scalar::quadratic(rat(1, 2), rat(3, 1), rat(2, 1)).unwrap());
    assert_eq!(g.basis_bracket(1, 1)[0], Scalar::from_int(2));
    assert_eq!(b.unwrap().pairing()[0][0], Scalar::from_frac(-3, 4));
}

#[test]
fn rejects_bad_documents() {
    let cases = [
        ("{", "malformed JSON"),
        (r#"{"even": ["X"], "odd": [], "extra": 1}"#, "malformed JSON"),
        (r#"{"even": ["X"], "odd": ["e"], "brackets": [{"x": "X", "y": "e", "value": {"X": "1"}}]}"#, ""),
        (r#"{"even": ["X"], "odd": ["X"]}"#, ""),
        (r#"{"even": ["X"], "odd": ["e"], "brackets": [{"x": "X", "y": "q", "value": {}}]}"#, ""),
        (r#"{"even": ["X"], "odd": ["e"], "brackets": [{"x": "e", "y": "e", "value": {"X": "1/0"}}]}"#, ""),
    ];
    for (text, needle) in cases {
        let err = load_algebra(text).unwrap_err();
        assert!(err.to_string().contains(needle), "{text}: {err}");
    }
    assert!(matches!(load_algebra("[]"), Err(Error::Invalid(_))));
}

#[test]
fn extension_data_round_trips() {
    for v in 0..3 {
        let e = catalog::g8(v);
        let flag = detect_weak_filiform(&e.algebra).unwrap();
        let dec = decompose_weak_filiform(&e.algebra, e.form.as_ref().unwrap(), &flag).unwrap();
        let text = serde_json::to_string(&extension_doc(&dec.h, &dec.data)).unwrap();
        let back = load_extension_data(&dec.h, &text).unwrap();
        assert_eq!(back.d.matrix(), dec.data.d.matrix());
        assert_eq!(back.x0, dec.data.x0);
        assert_eq!(back.lambda0, dec.data.lambda0);
    }
}

#[test]
fn extension_data_rejects_even_images() {
    let g = catalog::g6(0).algebra;
    let text = r#"{"D": {"X1": {"X2": "1"}}, "X0": {}, "lambda0": "0"}"#;
    assert!(load_extension_data(&g, text).is_err());
}
