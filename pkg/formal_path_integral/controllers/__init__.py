from formal_path_integral.controllers.run_controller import HANDLERS
