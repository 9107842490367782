import uuid


def new_run_id(label=None):
    """``{"Run-ID": ...}``, ready to be passed as ``extra`` to the application logger."""
    run_id = uuid.uuid4().hex[:12]
    if label:
        run_id = f"{label}-{run_id}"
    return {"Run-ID": run_id}
