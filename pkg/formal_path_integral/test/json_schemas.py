from formal_path_integral.utils.files.file_interactions import load_schema

PropagatorSchema = load_schema("propagator")
CheckReportSchema = load_schema("check_report")
DiagramsSchema = load_schema("diagrams")
DivergencesSchema = load_schema("divergences")
StphaseSchema = load_schema("stphase")
ErrorSchema = load_schema("error")
