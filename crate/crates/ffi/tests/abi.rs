use std::ffi::{CStr, CString};
use std::ptr;

use sumperfect_ffi::*;

fn from_edges(n: usize, edges: &[(usize, usize)]) -> *mut SpGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    let status = unsafe { sp_graph_from_edges(n, flat.as_ptr(), edges.len(), &mut g) };
    assert_eq!(status, SpStatus::Ok);
    g
}

#[test]
fn c5_round_trip_and_invariants() {
    let g = from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(sp_graph_to_graph6(g, &mut text), SpStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "Dhc");
        sp_string_free(text);

        let (mut n, mut a, mut w, mut nu, mut t) = (0, 0, 0, 0, 0);
        assert_eq!(sp_graph_order(g, &mut n), SpStatus::Ok);
        assert_eq!(sp_alpha(g, &mut a), SpStatus::Ok);
        assert_eq!(sp_omega(g, &mut w), SpStatus::Ok);
        assert_eq!(sp_matching_number(g, &mut nu), SpStatus::Ok);
        assert_eq!(sp_triangles(g, &mut t), SpStatus::Ok);
        assert_eq!((n, a, w, nu, t), (5, 2, 2, 2, 0));

        let mut d = 0i64;
        assert_eq!(sp_deficit(g, &mut d), SpStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(sp_max_deficiency(g, &mut d), SpStatus::Ok);
        assert_eq!(d, 1);

        let (mut ok, mut index) = (true, 99);
        assert_eq!(sp_is_sum_perfect(g, &mut ok, &mut index), SpStatus::Ok);
        assert!(!ok);
        assert_eq!(index, 1);
        assert_eq!(sp_is_threshold(g, &mut ok), SpStatus::Ok);
        assert!(!ok);
        assert_eq!(sp_is_split(g, &mut ok), SpStatus::Ok);
        assert!(!ok);
        sp_graph_free(g);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        let mut g = ptr::null_mut();
        let edges = [0usize, 5];
        assert_eq!(sp_graph_from_edges(3, edges.as_ptr(), 1, &mut g), SpStatus::InvalidVertex);
        let edges = [1usize, 1];
        assert_eq!(sp_graph_from_edges(3, edges.as_ptr(), 1, &mut g), SpStatus::Loop);
        assert_eq!(sp_graph_from_edges(65, ptr::null(), 0, &mut g), SpStatus::Capacity);
        assert_eq!(sp_graph_from_edges(3, ptr::null(), 2, &mut g), SpStatus::NullPointer);
        assert!(g.is_null());

        let bad = CString::new("D!!").unwrap();
        assert_eq!(sp_graph_from_graph6(bad.as_ptr(), &mut g), SpStatus::Parse);
        let latin1 = [0xffu8, 0];
        assert_eq!(
            sp_graph_from_graph6(latin1.as_ptr().cast(), &mut g),
            SpStatus::InvalidUtf8
        );

        let mut n = 0;
        assert_eq!(sp_graph_order(ptr::null(), &mut n), SpStatus::NullPointer);
        let big = from_edges(21, &[]);
        let mut d = 0i64;
        assert_eq!(sp_max_deficiency(big, &mut d), SpStatus::Envelope);
        assert_eq!(sp_alpha(big, ptr::null_mut()), SpStatus::NullPointer);
        sp_graph_free(big);
        sp_graph_free(ptr::null_mut());

        let msg = CStr::from_ptr(sp_status_message(SpStatus::Envelope));
        assert!(!msg.to_bytes().is_empty());
    }
}

#[test]
fn family_members_through_the_abi() {
    unsafe {
        for i in 1..=27 {
            let mut g = ptr::null_mut();
            assert_eq!(sp_family_member(i, &mut g), SpStatus::Ok);
            let (mut ok, mut index) = (true, 0);
            assert_eq!(sp_is_sum_perfect(g, &mut ok, &mut index), SpStatus::Ok);
            assert!(!ok);
            assert_eq!(index, i);
            let mut d = 0i64;
            assert_eq!(sp_deficit(g, &mut d), SpStatus::Ok);
            assert_eq!(d, 1);
            sp_graph_free(g);
        }
        let mut g = ptr::null_mut();
        assert_eq!(sp_family_member(0, &mut g), SpStatus::InvalidVertex);
        assert_eq!(sp_family_member(28, &mut g), SpStatus::InvalidVertex);
    }
}

#[test]
fn graph6_parse_through_the_abi() {
    let text = CString::new("C~").unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sp_graph_from_graph6(text.as_ptr(), &mut g), SpStatus::Ok);
        let (mut w, mut ok) = (0, false);
        assert_eq!(sp_omega(g, &mut w), SpStatus::Ok);
        assert_eq!(w, 4);
        assert_eq!(sp_is_threshold(g, &mut ok), SpStatus::Ok);
        assert!(ok);
        sp_graph_free(g);
    }
}
