use std::ffi::{CStr, CString};
use std::ptr;

use oriented_diameter_ffi::*;

fn last_error() -> String {
    let p = od_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn graph(n: usize, edges: &[(usize, usize)]) -> *mut OdGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut g = ptr::null_mut();
    let st = unsafe { od_graph_new(n, flat.as_ptr(), edges.len(), &mut g) };
    assert_eq!(st, OdStatus::Ok);
    g
}

fn cycle(n: usize) -> *mut OdGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

fn arcs(o: *const OdOrientation) -> Vec<(usize, usize)> {
    let k = unsafe { od_orientation_arc_count(o) };
    let mut t = vec![0; k];
    let mut h = vec![0; k];
    assert_eq!(unsafe { od_orientation_arcs(o, t.as_mut_ptr(), h.as_mut_ptr(), k) }, OdStatus::Ok);
    t.into_iter().zip(h).collect()
}

#[test]
fn analyze_petersen_from_text() {
    let mut text = String::from("10 15\n");
    for i in 0..5 {
        text += &format!("{} {}\n{} {}\n{} {}\n", i, (i + 1) % 5, i, i + 5, i + 5, 5 + (i + 2) % 5);
    }
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { od_graph_parse(c.as_ptr(), &mut g) }, OdStatus::Ok);
    let mut info = OdGraphInfo::default();
    assert_eq!(unsafe { od_graph_analyze(g, &mut info) }, OdStatus::Ok);
    assert_eq!(
        info,
        OdGraphInfo {
            n: 10,
            m: 15,
            min_degree: 3,
            girth: 5,
            bridgeless: true,
            diameter: 2
        }
    );
    let mut opt = 0;
    assert_eq!(unsafe { od_oracle(g, 24, 2, &mut opt, ptr::null_mut()) }, OdStatus::Ok);
    assert_eq!(opt, 6);
    unsafe { od_graph_free(g) };
}

#[test]
fn orient_cycle_gives_directed_cycle() {
    let g = cycle(9);
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { od_orient(g, 1, 2, &mut o) }, OdStatus::Ok);
    let mut d = 0;
    assert_eq!(unsafe { od_orientation_diameter(o, &mut d) }, OdStatus::Ok);
    assert_eq!(d, 8);
    let mut floor = 0;
    assert_eq!(unsafe { od_orientation_bound_floor(o, &mut floor) }, OdStatus::Ok);
    assert!(floor >= 8);
    let a = arcs(o);
    assert_eq!(a.len(), 9);
    let mut out = [0usize; 9];
    for &(t, h) in &a {
        out[t] += 1;
        assert!((t + 1) % 9 == h || (h + 1) % 9 == t);
    }
    assert!(out.iter().all(|&k| k == 1));
    unsafe {
        od_orientation_free(o);
        od_graph_free(g);
    }
}

#[test]
fn robbins_and_oracle_agree_on_k4_bounds() {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let g = graph(4, &edges);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { od_robbins(g, &mut r) }, OdStatus::Ok);
    let mut dr = 0;
    assert_eq!(unsafe { od_orientation_diameter(r, &mut dr) }, OdStatus::Ok);
    let mut opt = 0;
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { od_oracle(g, 24, 1, &mut opt, &mut w) }, OdStatus::Ok);
    assert_eq!(opt, 3);
    assert!(dr >= opt);
    assert_eq!(arcs(w).len(), 6);
    let mut floor = 0;
    assert_eq!(unsafe { od_orientation_bound_floor(w, &mut floor) }, OdStatus::InvalidArgument);
    unsafe {
        od_orientation_free(r);
        od_orientation_free(w);
        od_graph_free(g);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let g = graph(2, &[(0, 1)]);
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { od_orient(g, 1, 1, &mut o) }, OdStatus::Precondition);
    assert!(o.is_null());
    assert!(last_error().contains("bridge"));
    assert_eq!(unsafe { od_robbins(g, &mut o) }, OdStatus::Precondition);
    unsafe { od_graph_free(g) };

    let c = cycle(5);
    assert_eq!(unsafe { od_orient(c, 0, 1, &mut o) }, OdStatus::InvalidArgument);
    let mut opt = 0;
    assert_eq!(unsafe { od_oracle(c, 3, 1, &mut opt, ptr::null_mut()) }, OdStatus::BudgetExceeded);
    unsafe { od_graph_free(c) };

    let bad = CString::new("3 1\n0 x\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { od_graph_parse(bad.as_ptr(), &mut g) }, OdStatus::Parse);
    assert_eq!(unsafe { od_graph_new(3, [0usize, 0].as_ptr(), 1, &mut g) }, OdStatus::InvalidArgument);
    assert_eq!(unsafe { od_graph_new(3, ptr::null(), 2, &mut g) }, OdStatus::NullPointer);
    assert!(g.is_null());
    unsafe {
        od_graph_free(ptr::null_mut());
        od_orientation_free(ptr::null_mut());
    }
}

#[test]
fn short_arc_buffer_is_rejected() {
    let g = cycle(4);
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { od_robbins(g, &mut o) }, OdStatus::Ok);
    let mut t = [0usize; 3];
    let mut h = [0usize; 3];
    assert_eq!(
        unsafe { od_orientation_arcs(o, t.as_mut_ptr(), h.as_mut_ptr(), 3) },
        OdStatus::InvalidArgument
    );
    unsafe {
        od_orientation_free(o);
        od_graph_free(g);
    }
}

#[test]
fn h_and_version() {
    assert_eq!(od_bound_h(3, 3), 4);
    assert_eq!(od_bound_h(4, 3), 5);
    assert_eq!(od_bound_h(3, 2), -1);
    let v = unsafe { CStr::from_ptr(od_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/oriented_diameter.h")).unwrap();
    for name in [
        "od_last_error_message",
        "od_version",
        "od_graph_new",
        "od_graph_parse",
        "od_graph_free",
        "od_graph_analyze",
        "od_orient",
        "od_robbins",
        "od_oracle",
        "od_orientation_free",
        "od_orientation_arc_count",
        "od_orientation_arcs",
        "od_orientation_diameter",
        "od_orientation_bound_floor",
        "od_bound_h",
        "typedef struct OdGraph OdGraph",
        "OD_STATUS_PRECONDITION = 4",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
