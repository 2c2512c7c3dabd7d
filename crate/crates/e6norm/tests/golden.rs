//! Golden-file test: the root table, extraspecial pairs, and full
//! structure-constant table are frozen as JSON; any change to the
//! ordering or the sign propagation shows up as a diff here.

use e6norm::E6;

#[test]
fn root_system_dump_matches_golden_file() {
    let ctx = E6::get();
    let dump = e6norm::rootsys::dump(&ctx.roots, &ctx.consts);
    let fresh = serde_json::to_value(&dump).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/rootsys.json")).unwrap();
    assert_eq!(
        fresh, golden,
        "root-system dump deviates from the frozen golden file"
    );
    // sanity on the golden itself
    assert_eq!(golden["roots"].as_array().unwrap().len(), 36);
    assert_eq!(golden["extraspecial"].as_array().unwrap().len(), 30);
}
