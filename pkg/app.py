#!/usr/bin/env python3
"""
Squeeze Lab Streamlit App
Pick a domain → pinching data at a boundary point → boundary-estimate curve → envelopes → Excel download
"""

import streamlit as st
import pandas as pd
import numpy as np
import os
import sys
from io import BytesIO
import plotly.graph_objects as go


# Add src directory to path for backend imports
current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(current_dir, 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

# Import backend modules
try:
    from domains_catalog import catalog_lookup, default_boundary_point, list_catalog
    from pinching import PinchingAnalyzer
    from squeeze_bounds import boundary_estimate_at_point
    from comparisons import envelope_table
    from squeeze_errors import SqueezeLabError
except ImportError as e:
    st.error(f"❌ Backend import error: {e}")
    st.error("Please ensure all backend modules are in the 'src/' directory")
    st.stop()


PRESET_DOMAINS = [
    "thullen:k=0.5",
    "ball:n=2",
    "ellipsoid:a=1,1.2,0.9,1.1",
    "cartan-hartogs:I:1,1:k=0.5:m=1",
    "reinhardt-sheared:eps=0.01",
    "reinhardt",
]


def pinch_summary_frame(pinch_result):
    """
    Prepare a pinching result for display.

    Args:
        pinch_result: PinchResult from the analyzer

    Returns:
        Two-column DataFrame (Quantity, Value) with infinite radii spelled out
    """
    row = pinch_result.to_dict()
    labels = [
        ('point', 'Boundary point'),
        ('lambda_max', 'Largest tangential eigenvalue'),
        ('lambda_min', 'Smallest tangential eigenvalue'),
        ('inner_radius', 'Inner radius 1/lambda'),
        ('enclosing_radius', 'Enclosing radius e'),
        ('sampled_enclosing_radius', 'Sampled enclosing radius'),
        ('pinching', 'Pinching radius B'),
        ('gsc', 'Globally strongly convex'),
    ]
    return pd.DataFrame({
        'Quantity': [label for _, label in labels],
        'Value': [format_value(row[key]) for key, _ in labels],
    })


def format_value(value):
    """Compact display string for floats, lists and flags."""
    if isinstance(value, bool):
        return "Yes" if value else "No"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(f"{v:g}" for v in value) + ")"
    return str(value)


def boundary_curve_frame(results):
    """Rows of (depth, lower bound, tag) from boundary_estimate_at_point output."""
    return pd.DataFrame([
        {'depth': depth, 'lower_bound': bound.lower, 'tag': bound.tag}
        for depth, bound in results
    ])


def depth_grid(enclosing, count=40):
    """Log-spaced depths up to 0.2 e (0.2 when e is infinite)."""
    top = 0.2 * enclosing if np.isfinite(enclosing) else 0.2
    return list(np.logspace(np.log10(top) - 5.0, np.log10(top), count))


def excel_report(tables):
    """
    Write every table to its own sheet.

    Args:
        tables: dict of sheet name -> DataFrame

    Returns:
        bytes of the .xlsx file
    """
    buffer = BytesIO()
    with pd.ExcelWriter(buffer, engine='openpyxl') as writer:
        for sheet, frame in tables.items():
            frame.to_excel(writer, sheet_name=sheet[:31], index=False)
    return buffer.getvalue()


def main():
    """Main Streamlit application."""

    st.set_page_config(
        page_title="Squeeze Lab",
        page_icon="🔵",
        layout="wide"
    )

    st.title("🔵 Squeeze Lab")
    st.markdown("**Pick a domain → Pinching data → Boundary estimate → Comparison envelopes → Download**")
    st.markdown("---")

    # Step 1: Domain
    st.header("📐 Step 1: Choose a Domain")
    col1, col2 = st.columns([2, 1])
    with col1:
        preset = st.selectbox("Cataloged domain", PRESET_DOMAINS)
        identifier = st.text_input("Identifier (edit to change parameters)", value=preset)
    with col2:
        samples = st.number_input("Boundary samples", min_value=1000, max_value=1_000_000, value=20_000, step=1000)
        seed = st.number_input("Seed", min_value=0, value=42, step=1)

    with st.expander("📚 Catalog", expanded=False):
        st.dataframe(list_catalog(), use_container_width=True)

    if st.button("🚀 Analyze", type="primary", use_container_width=True):
        analyze_domain(identifier, int(samples), int(seed))

    if 'pinch_result' in st.session_state:
        show_results()


def analyze_domain(identifier, samples, seed):
    """Run the pinching analysis and boundary-estimate sweep, keeping results in session state."""
    try:
        with st.spinner("Sampling the boundary..."):
            domain = catalog_lookup(identifier)
            point = default_boundary_point(domain)
            analyzer = PinchingAnalyzer(domain, samples=samples, seed=seed)
            result = analyzer.pinch(point)
            curve = None
            if result.gsc:
                depths = depth_grid(result.enclosing_radius)
                curve = boundary_curve_frame(
                    boundary_estimate_at_point(domain, point, depths, analyzer.interior, pinch=result)
                )
    except SqueezeLabError as e:
        st.error(str(e))
        if e.hint:
            st.info(e.hint)
        return

    st.session_state['identifier'] = identifier
    st.session_state['pinch_result'] = result
    st.session_state['boundary_curve'] = curve
    st.session_state['processing_log'] = analyzer.processing_log


def show_results():
    """Display pinching data, the boundary-estimate curve, envelopes and the download."""

    st.markdown("---")
    st.header("📊 Step 2: Results")

    result = st.session_state['pinch_result']
    curve = st.session_state.get('boundary_curve')
    identifier = st.session_state.get('identifier', '')

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Pinching radius B", f"{result.pinching:.4f}")
    with col2:
        e_text = "Infinite" if result.enclosing_is_infinite else f"{result.enclosing_radius:.4f}"
        st.metric("Enclosing radius e", e_text)
    with col3:
        st.metric("√B (liminf bound)", f"{np.sqrt(result.pinching):.4f}")

    summary = pinch_summary_frame(result)
    st.dataframe(summary, use_container_width=True)

    tables = {'Pinching': summary}
    if curve is not None and len(curve) > 0:
        st.subheader("📈 Boundary Estimate Along the Inward Normal")
        fig = go.Figure()
        fig.add_trace(go.Scatter(x=curve['depth'], y=curve['lower_bound'], mode='lines+markers',
                                 name='lower bound', text=curve['tag']))
        fig.add_hline(y=float(np.sqrt(result.pinching)), line_dash="dash", annotation_text="√B")
        fig.update_layout(xaxis_type="log", xaxis_title="depth", yaxis_title="squeezing lower bound",
                          yaxis_range=[0, 1.05])
        st.plotly_chart(fig, use_container_width=True)
        tables['Boundary estimate'] = curve
    else:
        st.warning("⚠️ Pinching radius is 0 here: the boundary estimate does not apply.")

    st.subheader("🔁 Comparison Envelopes")
    s_value = st.slider("Squeezing lower bound s", min_value=0.05, max_value=1.0,
                        value=float(max(0.05, min(1.0, np.sqrt(result.pinching)))), step=0.01)
    envelopes = envelope_table([s_value], [result.point.n])
    st.dataframe(envelopes, use_container_width=True)
    tables['Envelopes'] = envelopes

    excel_data = excel_report(tables)
    safe_name = identifier.replace(':', '_').replace('=', '').replace(',', '-')
    st.download_button(
        label="📥 Download Report (Excel)",
        data=excel_data,
        file_name=f"squeeze_lab_{safe_name}.xlsx",
        mime="application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
        type="primary",
        use_container_width=True
    )

    log = st.session_state.get('processing_log', [])
    if log:
        with st.expander(f"🧾 Processing Log ({len(log)})", expanded=False):
            for entry in log:
                st.text(entry)


if __name__ == "__main__":
    main()
