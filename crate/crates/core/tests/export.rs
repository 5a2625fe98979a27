use grasspack::construction::build_family;
use grasspack::export::{read_csv, write_csv, ExportRecord};

#[test]
fn json_export_is_deterministic_and_round_trips() {
    let f = build_family(4).unwrap();
    let a = ExportRecord::new("main", 4, &f.packing, Some(f.packing.pair_stats()))
        .unwrap()
        .to_json()
        .unwrap();
    let g = build_family(4).unwrap();
    let b = ExportRecord::new("main", 4, &g.packing, Some(g.packing.pair_stats()))
        .unwrap()
        .to_json()
        .unwrap();
    assert_eq!(a, b);
    let back = ExportRecord::from_json(&a).unwrap().to_packing().unwrap();
    for k in 0..back.len() {
        assert_eq!(back.get(k).projector(), f.packing.get(k).projector());
    }
}

#[test]
fn csv_round_trip() {
    let f = build_family(4).unwrap();
    let mut buf = Vec::new();
    write_csv(&f.packing, &mut buf).unwrap();
    let back = read_csv(buf.as_slice()).unwrap();
    assert!(back.same_set(&f.packing));
}

#[test]
fn malformed_input_is_rejected() {
    assert!(ExportRecord::from_json("{}").is_err());
    assert!(read_csv("subspace_index,row_index,c0\n0,0,x\n".as_bytes()).is_err());
}
